// Command-line front end.  Every subcommand prints one JSON document.
//
// Exit codes: 0 when all requested checks pass, 1 when a check fails,
// 2 on malformed input (with an {"error": ...} document).
#pragma once

#include <ostream>

namespace gaudin::cli {

int run(int argc, const char* const* argv, std::ostream& out);

} // namespace gaudin::cli
