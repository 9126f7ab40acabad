#ifndef GFUN_GFUN_HPP
#define GFUN_GFUN_HPP

#include "gfun/alg_roots.hpp"
#include "gfun/apery.hpp"
#include "gfun/asymptotics.hpp"
#include "gfun/ball.hpp"
#include "gfun/errors.hpp"
#include "gfun/json_io.hpp"
#include "gfun/log_values.hpp"
#include "gfun/ode.hpp"
#include "gfun/parser.hpp"
#include "gfun/polynomial.hpp"
#include "gfun/profile.hpp"
#include "gfun/rational.hpp"
#include "gfun/roots.hpp"
#include "gfun/series.hpp"

#endif
