// Copyright 2026 The dickson-zn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "dickson/admissibility.hpp"
#include "dickson/crt.hpp"
#include "dickson/feasibility.hpp"
#include "dickson/forms.hpp"
#include "dickson/integer.hpp"
#include "dickson/polynomial.hpp"
#include "dickson/primality.hpp"
#include "dickson/report.hpp"
#include "dickson/primesearch.hpp"
#include "dickson/shells.hpp"
#include "dickson/strong.hpp"
#include "dickson/theorem1.hpp"
