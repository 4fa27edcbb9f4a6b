#pragma once

#include "propeff/approx.hpp"
#include "propeff/augdual.hpp"
#include "propeff/cone.hpp"
#include "propeff/core.hpp"
#include "propeff/efficiency.hpp"
#include "propeff/harness.hpp"
#include "propeff/instance_io.hpp"
#include "propeff/linprog.hpp"
#include "propeff/polytope.hpp"
#include "propeff/scalarize.hpp"
#include "propeff/separation.hpp"
#include "propeff/svg.hpp"
