// Copyright 2026 The Vantage Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "vantage/dynamics.hpp"
#include "vantage/env.hpp"
#include "vantage/episode_io.hpp"
#include "vantage/error.hpp"
#include "vantage/eval.hpp"
#include "vantage/grid.hpp"
#include "vantage/map_io.hpp"
#include "vantage/mapgen.hpp"
#include "vantage/oracle.hpp"
#include "vantage/pipeline.hpp"
#include "vantage/policies.hpp"
#include "vantage/pose.hpp"
#include "vantage/random.hpp"
#include "vantage/render.hpp"
#include "vantage/scene.hpp"
#include "vantage/search.hpp"
#include "vantage/sensor.hpp"
