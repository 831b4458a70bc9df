#pragma once

#include "qzeta/arith.hpp"
#include "qzeta/bench.hpp"
#include "qzeta/bernoulli.hpp"
#include "qzeta/characters.hpp"
#include "qzeta/elementary_zeta.hpp"
#include "qzeta/errors.hpp"
#include "qzeta/exact.hpp"
#include "qzeta/irregularity.hpp"
#include "qzeta/modular_coeffs.hpp"
#include "qzeta/modular_zeta.hpp"
#include "qzeta/selftest.hpp"
#include "qzeta/series.hpp"
#include "qzeta/zeta_value.hpp"
