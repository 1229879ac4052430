#include <gtest/gtest.h>

#include "ctp/engine.hpp"
#include "ctp/exit_codes.hpp"

namespace ctp {
namespace {

template <typename E>
int code_of(const E& e) {
  return exit_code_for(std::make_exception_ptr(e));
}

TEST(ExitCodes, MapsFailureKinds) {
  EXPECT_EQ(code_of(UsageError("bad flag")), kExitUsage);
  EXPECT_EQ(code_of(InvalidInstanceError("no free path")), kExitUsage);
  EXPECT_EQ(code_of(RangeError("epsilon")), kExitUsage);
  EXPECT_EQ(code_of(std::invalid_argument("bad number")), kExitUsage);
  EXPECT_EQ(code_of(ContractViolation("walked a known block")), kExitInternal);
  EXPECT_EQ(code_of(std::logic_error("bug")), kExitInternal);
}

// Walks onto path 0 twice, whatever it finds.
class StubbornStrategy : public Strategy {
 public:
  std::string name() const override { return "stubborn"; }
  bool deterministic() const override { return true; }
  void execute(Navigator& nav, Chooser&) const override {
    nav.explore(nav.fan_route(0));
    nav.explore(nav.fan_route(0));
  }
};

TEST(ExitCodes, BrokenStrategyEndsAsInternalError) {
  auto inst = gen_gstar(1, {Number(1), Number(2)}, {0}, {});
  try {
    run(std::make_shared<StubbornStrategy>(), inst);
    FAIL() << "expected a contract violation";
  } catch (...) {
    EXPECT_EQ(exit_code_for(std::current_exception()), kExitInternal);
  }
}

}  // namespace
}  // namespace ctp
