#pragma once

// Umbrella header.

#include "bellscope/bell_dags.hpp"
#include "bellscope/causal_model.hpp"
#include "bellscope/correlators.hpp"
#include "bellscope/d_separation.hpp"
#include "bellscope/errors.hpp"
#include "bellscope/hv_model.hpp"
#include "bellscope/implication.hpp"
#include "bellscope/independence.hpp"
#include "bellscope/lemmas.hpp"
#include "bellscope/membership.hpp"
#include "bellscope/phenomenon.hpp"
#include "bellscope/principles.hpp"
#include "bellscope/properties.hpp"
#include "bellscope/quantum.hpp"
#include "bellscope/random_models.hpp"
#include "bellscope/rational.hpp"
#include "bellscope/report.hpp"
#include "bellscope/rng.hpp"
#include "bellscope/scenario.hpp"
#include "bellscope/simplex.hpp"
#include "bellscope/spacetime.hpp"
#include "bellscope/strategies.hpp"
#include "bellscope/text_format.hpp"
