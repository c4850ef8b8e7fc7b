// Copyright 2026 The qfiopt Authors
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


// Umbrella header for the whole library.

#pragma once

#include "qfiopt/channel.hpp"
#include "qfiopt/closedform.hpp"
#include "qfiopt/errors.hpp"
#include "qfiopt/axis.hpp"
#include "qfiopt/logdomain.hpp"
#include "qfiopt/optimize.hpp"
#include "qfiopt/oracle.hpp"
#include "qfiopt/random.hpp"
#include "qfiopt/sweep.hpp"
#include "qfiopt/verify.hpp"
