#pragma once

// Command-line driver: subcommands solve | certify | mms | probe over a
// shared flat-text configuration, artifacts under timestamped run
// directories.  Exit codes: 0 success, 2 configuration problems, 3 solver
// failures, 4 a certified bound violated by a converged solution.

namespace oldroyd {

int run_cli(int argc, char** argv);

}  // namespace oldroyd
