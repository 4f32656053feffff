#ifndef CXN_CLI_HPP
#define CXN_CLI_HPP

namespace cxn {

/// Command-line entry point (the `main` of the cxn tool, kept in the
/// library so tests can drive it in-process). Exit codes: 0 success, 1
/// validation or data error, 2 usage error.
int cli_main(int argc, const char* const* argv);

}  // namespace cxn

#endif
