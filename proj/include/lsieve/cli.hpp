#pragma once

namespace lsieve {

// Batch front end. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage or configuration error.
int cli_main(int argc, const char* const* argv);

}  // namespace lsieve
