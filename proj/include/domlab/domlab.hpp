#pragma once

#include "domlab/background.hpp"
#include "domlab/bounds.hpp"
#include "domlab/errors.hpp"
#include "domlab/general_payoffs.hpp"
#include "domlab/mc_oracle.hpp"
#include "domlab/numeric.hpp"
#include "domlab/overall.hpp"
#include "domlab/rational.hpp"
#include "domlab/reproduce.hpp"
#include "domlab/simple_prospect.hpp"
#include "domlab/situation.hpp"
#include "domlab/thresholds.hpp"
