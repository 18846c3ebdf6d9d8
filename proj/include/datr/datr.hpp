// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.

#pragma once

#include "datr/model.hpp"
#include "datr/render.hpp"
#include "datr/parser.hpp"
#include "datr/evaluator.hpp"
#include "datr/oracle.hpp"
