#pragma once

#include "bineg/bounds.hpp"
#include "bineg/channels.hpp"
#include "bineg/errors.hpp"
#include "bineg/harness.hpp"
#include "bineg/linalg.hpp"
#include "bineg/measures.hpp"
#include "bineg/random.hpp"
#include "bineg/serialize.hpp"
#include "bineg/states.hpp"
