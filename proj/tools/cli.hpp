#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace igff::cli {

enum ExitCode : int {
    kOk = 0,
    kChecksFailed = 1,
    kConfigError = 2,
    kNumericalFailure = 3,
    kIoError = 4,
};

/// Entry point of `igff theory|verify|simulate|entropy`; args exclude argv[0].
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace igff::cli
