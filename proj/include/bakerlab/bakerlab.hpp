#pragma once

#include "bakerlab/logc.hpp"
#include "bakerlab/params.hpp"
#include "bakerlab/quadrature.hpp"
#include "bakerlab/hfun.hpp"
#include "bakerlab/hyperbolic.hpp"
#include "bakerlab/parallel.hpp"
#include "bakerlab/verify.hpp"
#include "bakerlab/dynamics.hpp"
#include "bakerlab/gridfile.hpp"
#include "bakerlab/render.hpp"
