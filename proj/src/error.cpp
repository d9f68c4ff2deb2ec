#include "lamelab/error.hpp"

namespace lamelab {

void fail(const std::string& what) { throw Error(ErrorKind::Validation, what); }

void fail_convergence(const std::string& what) {
    throw Error(ErrorKind::NonConvergence, what);
}

}  // namespace lamelab
