#pragma once

#include "qscissors/closed_form.hpp"
#include "qscissors/config.hpp"
#include "qscissors/csv.hpp"
#include "qscissors/figures.hpp"
#include "qscissors/fock.hpp"
#include "qscissors/observables.hpp"
#include "qscissors/ode.hpp"
#include "qscissors/printed_variances.hpp"
#include "qscissors/propagation.hpp"
#include "qscissors/reconciliation.hpp"
#include "qscissors/rwa.hpp"
#include "qscissors/sources.hpp"
#include "qscissors/squeezing.hpp"
