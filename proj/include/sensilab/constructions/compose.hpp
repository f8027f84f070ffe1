#pragma once

#include <vector>

#include "sensilab/core/box.hpp"
#include "sensilab/weighted/certify.hpp"
#include "sensilab/weighted/weights.hpp"

namespace sensilab::constructions {

/// Pair symbol (s, i) with s in Sigma = [a-1] and i in Sigma_0 = [k0] is encoded as
/// 1 + (s - 1) * k0 + (i - 1).
int pair_symbol(int s, int i, int k0);

struct Extension {
  weighted::WeightedFunction tilde;
  int sigma0 = 0;
  weighted::WeightFunction w0;
  /// by_output[i - 1]: certificates for tilde = i, one per member of U.
  std::vector<CertificateCollection> by_output;
};

/// Output extension of (f, w) by Sigma_0 = [sigma0] with weights w0, using a
/// verified unambiguous collection of simple 1-certificates U of f.
/// Throws PreconditionError when U fails verification or is not simple.
Extension extend_output(const weighted::WeightedFunction& wf, const weighted::VerifiedCollection& u,
                        int sigma0, const weighted::WeightFunction& w0);

/// Certificates of the composition obtained by replacing, in each member of
/// `outer`, every fixed coordinate with symbol i by a member of inner_by_output[i - 1].
CertificateCollection splice(const CertificateCollection& outer,
                             const std::vector<CertificateCollection>& inner_by_output,
                             int inner_arity, int inner_alphabet, const std::string& label);

struct Composition {
  weighted::WeightedFunction function;
  CertificateCollection collection;
};

/// (h, w0) composed with the extension: f' = h o tilde-f coordinatewise with
/// weight w~, plus the spliced 1-certificate collection.
Composition compose_weighted(const LazyFunction& h, const CertificateCollection& h_collection,
                             const Extension& ext);

}  // namespace sensilab::constructions
