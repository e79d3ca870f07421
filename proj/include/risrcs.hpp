// SPDX-License-Identifier: Apache-2.0
//
// risrcs: RCS-based received power model for reconfigurable intelligent surfaces
// Copyright (C) 2026 The risrcs authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "risrcs/common.hpp"
#include "risrcs/geometry.hpp"
#include "risrcs/radiation.hpp"
#include "risrcs/reflection.hpp"
#include "risrcs/state_grid.hpp"
#include "risrcs/link.hpp"
#include "risrcs/control.hpp"
#include "risrcs/experiments.hpp"
