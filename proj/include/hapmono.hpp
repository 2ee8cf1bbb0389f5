#ifndef HAPMONO_HPP
#define HAPMONO_HPP

#include "hapmono/bfactor.hpp"
#include "hapmono/budget.hpp"
#include "hapmono/combinat.hpp"
#include "hapmono/cone.hpp"
#include "hapmono/errors.hpp"
#include "hapmono/graphs.hpp"
#include "hapmono/hilbert.hpp"
#include "hapmono/lp.hpp"
#include "hapmono/matching.hpp"
#include "hapmono/schedule.hpp"

#endif
