// Copyright 2026 The pqcgeo Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include "circuit.hpp"
#include "circuit_io.hpp"
#include "error.hpp"
#include "geometry/chain.hpp"
#include "geometry/fixtures.hpp"
#include "geometry/goodset.hpp"
#include "geometry/grid.hpp"
#include "geometry/injectivity.hpp"
#include "geometry/map.hpp"
#include "geometry/periodicity.hpp"
#include "geometry/rank.hpp"
#include "geometry/volume.hpp"
#include "haar.hpp"
#include "linalg.hpp"
#include "matrix_io.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "statemap.hpp"
