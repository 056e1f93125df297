#pragma once

namespace nmmg {

/// Entry point behind the nmmg binary; factored out so tests can drive the
/// command surface directly. Exit codes: 0 success, 1 invariant audit
/// failure, 2 bad flags, 3 solver error.
int cli_main(int argc, const char* const* argv);

}  // namespace nmmg
