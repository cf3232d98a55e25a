#pragma once

#include <iosfwd>

int cli_main(int argc, char** argv);
// Same as cli_main with explicit streams, for in-process tests.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);
