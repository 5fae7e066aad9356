// placeholder, replaced after module bring-up
#include "sslab/verify.hpp"
namespace sslab {
std::vector<DiscreteField> make_corpus(const Params&, const GridSpec&, std::uint64_t) { return {}; }
std::vector<CriterionResult> run_acceptance(const VerifyOptions&) { return {}; }
std::string acceptance_report_json(const std::vector<CriterionResult>&, const VerifyOptions&) { return "{}"; }
}
