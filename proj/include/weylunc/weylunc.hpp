#ifndef WEYLUNC_WEYLUNC_HPP
#define WEYLUNC_WEYLUNC_HPP

#include "weylunc/numerics.hpp"
#include "weylunc/report.hpp"
#include "weylunc/spin.hpp"
#include "weylunc/fock.hpp"
#include "weylunc/families.hpp"
#include "weylunc/analysis.hpp"
#include "weylunc/random.hpp"
#include "weylunc/verify.hpp"
#include "weylunc/io.hpp"

#endif  // WEYLUNC_WEYLUNC_HPP
