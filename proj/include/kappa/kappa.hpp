#pragma once

#include "kappa/rational.hpp"
#include "kappa/scalars.hpp"
#include "kappa/sparse.hpp"
#include "kappa/algebra.hpp"
#include "kappa/tensor.hpp"
#include "kappa/hopf.hpp"
#include "kappa/poincare.hpp"
#include "kappa/linsolve.hpp"
#include "kappa/rexpand.hpp"
#include "kappa/render.hpp"
#include "kappa/parse.hpp"
#include "kappa/generators.hpp"
#include "kappa/report.hpp"
#include "kappa/verify.hpp"
