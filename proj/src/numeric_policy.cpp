#include "mixest/numeric_policy.hpp"

namespace mixest {
namespace {
NumericPolicy& policy_storage() {
  static NumericPolicy policy;
  return policy;
}
}  // namespace

const NumericPolicy& numeric_policy() { return policy_storage(); }

void set_numeric_policy(const NumericPolicy& policy) { policy_storage() = policy; }

}  // namespace mixest
