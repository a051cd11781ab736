#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace mubasis::cli {

using Document = nlohmann::ordered_json;

enum class Command { compute, resolve, bounds, verify };

std::optional<Command> parse_command(const std::string& name);
std::string command_name(Command c);

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitVerification = 3;
inline constexpr int kExitResourceLimit = 4;

struct InputSpec {
  std::string text;                 // "(e1, e2, e3, e4)"
  std::optional<std::string> basis; // verify only: "((..),(..),(..))"
  std::uint64_t seed = 0;
  int max_degree = 20;
  double timeout = 300;  // seconds; enforced by main(), not run()
  bool timings = false;
};

struct Outcome {
  int exit_code = kExitOk;
  Document document;
};

// Never throws for bad input: failures become an error document with the
// matching exit code.
Outcome run(Command command, const InputSpec& input);

Document error_document(Command command, const InputSpec& input, int exit_code, const std::string& kind,
                        const std::string& message);
Document error_document(const std::string& command, const InputSpec& input, int exit_code, const std::string& kind,
                        const std::string& message);

// Same content as the JSON document, laid out as indented text.
std::string render_text(const Document& doc);

// Full command line handling, including the timeout watchdog.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mubasis::cli
