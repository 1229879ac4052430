#ifndef CTP_EXIT_CODES_HPP_
#define CTP_EXIT_CODES_HPP_

#include <exception>
#include <stdexcept>
#include <string>

#include "ctp/errors.hpp"

namespace ctp {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

// Bad command line, unreadable file or malformed spec.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Process exit status for an exception escaping a command.
inline int exit_code_for(const std::exception_ptr& failure) {
  try {
    std::rethrow_exception(failure);
  } catch (const UsageError&) {
    return kExitUsage;
  } catch (const ContractViolation&) {
    return kExitInternal;
  } catch (const Error&) {
    return kExitUsage;
  } catch (const std::invalid_argument&) {
    return kExitUsage;
  } catch (...) {
    return kExitInternal;
  }
}

}  // namespace ctp

#endif  // CTP_EXIT_CODES_HPP_
