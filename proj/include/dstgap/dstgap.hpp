// Copyright 2026 The dstgap Authors
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

#include "dstgap/bigfloat.hpp"
#include "dstgap/bounds.hpp"
#include "dstgap/error.hpp"
#include "dstgap/families.hpp"
#include "dstgap/flow_lp.hpp"
#include "dstgap/gap_objects.hpp"
#include "dstgap/instance.hpp"
#include "dstgap/integral.hpp"
#include "dstgap/io.hpp"
#include "dstgap/lp_exact.hpp"
#include "dstgap/maxflow.hpp"
#include "dstgap/rational.hpp"
#include "dstgap/simplex.hpp"
#include "dstgap/subsets.hpp"
