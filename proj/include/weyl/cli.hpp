#ifndef WEYL_CLI_HPP
#define WEYL_CLI_HPP

#include <ostream>

namespace weyl
{

inline constexpr const char *kOrderEnvironment = "WEYLSYM_ORDER";

/// Whole command line. Exit status: 0 success, 1 a verification failed, 2 usage or input error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace weyl

#endif
