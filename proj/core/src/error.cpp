#include "bohrlab/error.hpp"

namespace bohrlab {

void fail(const std::string& name, const std::string& detail) {
  throw Error(name, detail);
}

void require(bool cond, const std::string& what) {
  if (!cond) throw AssertionFailure(what);
}

}  // namespace bohrlab
