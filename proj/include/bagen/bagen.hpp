#pragma once

#include "bagen/analytics.hpp"
#include "bagen/bench.hpp"
#include "bagen/degreeseq.hpp"
#include "bagen/driver.hpp"
#include "bagen/generator.hpp"
#include "bagen/hashing.hpp"
#include "bagen/io.hpp"
#include "bagen/oracle.hpp"
#include "bagen/types.hpp"
