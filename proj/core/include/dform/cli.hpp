#pragma once

namespace dform {

/// Entry point of the dform executable. Exit codes: 0 success, 1 usage or
/// configuration error, 2 numerical failure.
int run_cli(int argc, char** argv);

}  // namespace dform
