#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sceot::cli {

enum ExitCode : int { kOk = 0, kVerdictFailure = 1, kError = 2 };

// args excludes the program name. Diagnostics go to err, summaries to out.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main_entry(int argc, char** argv);

}  // namespace sceot::cli
