#pragma once

namespace qnc {

/// Command-line front end. Exit codes: 0 success, 1 usage error,
/// 2 validation error, 3 oracle mismatch.
int cli_dispatch(int argc, const char* const* argv);

}  // namespace qnc
