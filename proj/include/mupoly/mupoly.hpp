#pragma once

#include "mupoly/error.hpp"
#include "mupoly/mu.hpp"
#include "mupoly/oracle.hpp"
#include "mupoly/poly.hpp"
#include "mupoly/report.hpp"
#include "mupoly/split.hpp"
