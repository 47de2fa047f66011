#pragma once

// Prior specification of every model parameter together with how the
// sampler treats it.

#include <array>

#include "chronsti/distributions.h"
#include "chronsti/evidence.h"
#include "chronsti/model.h"

namespace chronsti {

enum class ParamRole {
  FixedPrior,        // drawn from its prior each sweep, no data
  ConjugateUpdated,  // drawn exactly from its closed-form posterior each sweep
  Calibrated,        // random-walk Metropolis against the full log posterior
};

std::string_view to_string(ParamRole r);

enum class Transform { Log, Logit };

struct PriorSpec {
  ParamId id;
  Distribution prior;
  ParamRole role;
  Transform transform;
};

using PriorSet = std::array<PriorSpec, kNumParams>;

/// Priors of the case study. Natural-history transition parameters and the
/// proliferation rate use Gamma priors on yearly rates for the ODE engine
/// and Beta priors on yearly probabilities for the Markov engine.
PriorSet default_priors(EngineKind engine);

/// Marginal distribution of a parameter once its own direct evidence is
/// taken into account: the conjugate posterior for registry and binomial
/// parameters, the prior otherwise.
Distribution evidence_posterior(const PriorSpec& spec, const EvidenceData& data);

/// Log-likelihood of the direct evidence (registry counts, binomial counts)
/// that bears on one parameter; zero if there is none.
double evidence_log_likelihood(ParamId id, double value, const EvidenceData& data);

/// Sum of log prior densities.
double log_prior(const ParameterSet& theta, const PriorSet& priors);

/// Parameter set of prior means.
ParameterSet prior_means(const PriorSet& priors);

double to_unconstrained(Transform t, double x);
double from_unconstrained(Transform t, double z);
/// log |dx/dz| at z.
double log_jacobian(Transform t, double z);

}  // namespace chronsti
