#pragma once

#include "harmconv/cpoly.hpp"
#include "harmconv/verify.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace harmconv {

// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitIo = 3 };

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Comma-separated complex literals, lowest degree first. Each entry is a real number,
// an imaginary number ("2i", "-i"), a sum ("1.5-0.5i") or a parenthesised pair "(re,im)".
std::vector<Cx> parse_coefficients(std::string_view text);
Cx parse_complex(std::string_view text);

nlohmann::ordered_json to_json(Cx z);
nlohmann::ordered_json to_json(const CPoly& p);
nlohmann::ordered_json to_json(const VerificationReport& r);
nlohmann::ordered_json to_json(const ConjectureScan& s);

}  // namespace harmconv
