#pragma once

#include "ncconvex/convexity.hpp"
#include "ncconvex/errors.hpp"
#include "ncconvex/evaluation.hpp"
#include "ncconvex/expr_parser.hpp"
#include "ncconvex/free_algebra.hpp"
#include "ncconvex/json_io.hpp"
#include "ncconvex/matrix_domain.hpp"
#include "ncconvex/one_var.hpp"
#include "ncconvex/presets.hpp"
#include "ncconvex/slice_cert.hpp"
