#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mubasis/cli.hpp"
#include "mubasis/mubasis.hpp"
#include "test_util.hpp"

using namespace mubasis;
using namespace mubasis::cli;
using namespace mubasis::testing;

namespace {

const char* kExample = "(s^2, t^2, s^2-1, s^2+1)";
const char* kExampleBasis = "((-t^2, 1, t^2, 0), (-2, 0, 1, 1), (1 - s^2, 0, s^2, 0))";
const char* kCubic = "(3s^3 - 2t^3 + s t - 1, t^3 - s^2 t + 2, s^3 + t^2 - 3 s, -2t^3 + s^2 + t)";

InputSpec input_of(const std::string& text, std::uint64_t seed = 0) {
  InputSpec in;
  in.text = text;
  in.seed = seed;
  return in;
}

struct Captured {
  int code;
  std::string out, err;
};

Captured invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "mubasis");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void leaves(const Document& d, std::vector<std::string>& out) {
  if (d.is_object() || d.is_array()) {
    for (const auto& x : d) leaves(x, out);
  } else if (d.is_string()) {
    out.push_back(d.get<std::string>());
  } else if (!d.is_null()) {
    out.push_back(d.dump());
  }
}

}  // namespace

TEST(Cli, ComputeWorkedExample) {
  auto o = run(Command::compute, input_of(kExample));
  ASSERT_EQ(o.exit_code, kExitOk) << o.document.dump(2);
  const auto& doc = o.document;
  EXPECT_EQ(doc["status"], "ok");
  EXPECT_EQ(doc["d"], 2);
  EXPECT_EQ(doc["branch"], "pd2");
  EXPECT_EQ(doc["resolution"]["beta2"], 1);
  EXPECT_NE(doc["alpha"], "0");
  EXPECT_TRUE(doc["bounds"]["all_asserted_pass"].get<bool>());
  EXPECT_FALSE(doc.contains("timings"));

  // The printed basis parses back and verifies with the printed alpha.
  Basis b;
  for (int i = 0; i < 3; ++i) {
    PolyVector v;
    for (const auto& e : doc["basis"][i]) {
      Poly p = P(e.get<std::string>());
      EXPECT_EQ(p.to_string(), e.get<std::string>());
      v.push_back(p);
    }
    b[i] = v;
  }
  EXPECT_EQ(verify_mu_basis(b, validate(V(kExample))).get_str(), doc["alpha"].get<std::string>());
}

TEST(Cli, VerifyWorkedExampleBasis) {
  auto in = input_of(kExample);
  in.basis = kExampleBasis;
  auto o = run(Command::verify, in);
  ASSERT_EQ(o.exit_code, kExitOk) << o.document.dump(2);
  EXPECT_EQ(o.document["alpha"], "-1");
  for (const auto& [stage, ok] : o.document["stages"].items()) EXPECT_TRUE(ok.get<bool>()) << stage;
}

TEST(Cli, VerifyRejections) {
  auto in = input_of(kExample);
  in.basis = "((-t^2, 1, t^2, 0), (-2, 0, 1, 1), (1, 0, 0, 0))";
  auto o = run(Command::verify, in);
  EXPECT_EQ(o.exit_code, kExitVerification);
  EXPECT_EQ(o.document["error"]["message"], "not a syzygy: vector 3");
  in.basis = "((-t^2, 1, t^2, 0), (-2, 0, 1, 1))";
  EXPECT_EQ(run(Command::verify, in).exit_code, kExitInvalidInput);
  in.basis.reset();
  EXPECT_EQ(run(Command::verify, in).exit_code, kExitInvalidInput);
}

TEST(Cli, InvalidInputs) {
  auto o = run(Command::compute, input_of("(s, s, s, s)"));
  EXPECT_EQ(o.exit_code, kExitInvalidInput);
  EXPECT_EQ(o.document["status"], "error");
  EXPECT_NE(o.document["error"]["message"].get<std::string>().find("common factor s"), std::string::npos);

  for (const char* bad : {"(s**2, t, 1, 1)", "(x, t, 1, 1)", "(s^1.5, t, 1, 1)", "(s, t, 1", "(s, t, 1)"}) {
    auto e = run(Command::compute, input_of(bad));
    EXPECT_EQ(e.exit_code, kExitInvalidInput) << bad;
    EXPECT_EQ(e.document["error"]["kind"], "invalid_input");
  }
  auto pos = run(Command::compute, input_of("(s, t, 1, 2 ** s)"));
  EXPECT_NE(pos.document["error"]["message"].get<std::string>().find("position"), std::string::npos);
}

TEST(Cli, DegenerateInputWarns) {
  auto o = run(Command::compute, input_of("(1, 0, 0, 0)"));
  EXPECT_EQ(o.exit_code, kExitOk);
  EXPECT_FALSE(o.document["warnings"].empty());
}

TEST(Cli, MaxDegreeIsAResourceLimit) {
  auto in = input_of(kExample);
  in.max_degree = 1;
  auto o = run(Command::compute, in);
  EXPECT_EQ(o.exit_code, kExitResourceLimit);
  EXPECT_EQ(o.document["error"]["kind"], "resource_limit");
}

TEST(Cli, ResolveAndBoundsOnly) {
  auto r = run(Command::resolve, input_of(kExample));
  ASSERT_EQ(r.exit_code, kExitOk);
  EXPECT_FALSE(r.document.contains("basis"));
  EXPECT_EQ(r.document["homogenized"], Document::parse(R"(["s^2", "t^2", "s^2 - u^2", "s^2 + u^2"])"));
  EXPECT_EQ(r.document["fixed_first_map"]["shifts"], Document::parse("[[2,2,2,2],[2,4,4,4],[6]]"));
  EXPECT_EQ(r.document["minimal"]["regularity"], 4);

  auto b = run(Command::bounds, input_of(kExample));
  ASSERT_EQ(b.exit_code, kExitOk);
  EXPECT_FALSE(b.document.contains("basis"));
  EXPECT_EQ(b.document["bounds"]["qs_bound"], "881664");
  EXPECT_EQ(b.document["bounds"]["case"], "ii");
}

TEST(Cli, DeterministicDocuments) {
  for (const char* text : {kExample, "(s^2 + t, t^2 - s, s*t + 1, s - t + 2)"}) {
    for (std::uint64_t seed : {0u, 9u}) {
      auto a = run(Command::compute, input_of(text, seed)), b = run(Command::compute, input_of(text, seed));
      EXPECT_EQ(a.document.dump(2), b.document.dump(2));
      EXPECT_EQ(a.document["seed"], seed);
    }
  }
  auto a = invoke({"compute", "--json", "--seed", "3", kExample});
  auto b = invoke({"compute", "--json", "--seed", "3", kExample});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TextAndJsonCarryTheSameValues) {
  auto json = invoke({"compute", "--json", kExample});
  auto text = invoke({"compute", kExample});
  ASSERT_EQ(json.code, 0);
  ASSERT_EQ(text.code, 0);
  std::vector<std::string> values;
  leaves(Document::parse(json.out), values);
  std::size_t at = 0;
  for (const auto& v : values) {
    std::size_t found = text.out.find(v, at);
    ASSERT_NE(found, std::string::npos) << v;
    at = found + v.size();
  }
}

TEST(Cli, CommandLine) {
  auto help = invoke({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("\"**\" is rejected"), std::string::npos);
  EXPECT_EQ(invoke({"compute", "--bogus", kExample}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"compute"}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"explain", kExample}).code, kExitInvalidInput);
  EXPECT_EQ(invoke({"compute", kExample, "extra"}).code, kExitInvalidInput);

  auto err = invoke({"compute", "--json", "(s, s, s, s)"});
  EXPECT_EQ(err.code, kExitInvalidInput);
  EXPECT_EQ(Document::parse(err.out)["exit_code"], kExitInvalidInput);
  auto human = invoke({"compute", "(s, s, s, s)"});
  EXPECT_TRUE(human.out.empty());
  EXPECT_NE(human.err.find("common factor s"), std::string::npos);

  auto verify = invoke({"verify", "--json", kExample, kExampleBasis});
  EXPECT_EQ(verify.code, 0);
  EXPECT_EQ(Document::parse(verify.out)["alpha"], "-1");

  auto path = std::filesystem::temp_directory_path() / "mubasis_cli_test_input.txt";
  std::ofstream(path) << kExample << "\n";
  auto from_file = invoke({"compute", "--json", "-i", path.string()});
  auto inline_arg = invoke({"compute", "--json", kExample});
  EXPECT_EQ(from_file.out, inline_arg.out);
  std::filesystem::remove(path);
  EXPECT_EQ(invoke({"compute", "-i", path.string()}).code, kExitInvalidInput);
}

TEST(Cli, TimeoutExitsWithResourceLimit) {
  std::string cmd = std::string(MUBASIS_CLI_PATH) + " compute --json --timeout 0.01 \"" + kCubic + "\"";
  FILE* pipe = popen(cmd.c_str(), "r");
  ASSERT_NE(pipe, nullptr);
  std::string out;
  char buf[256];
  while (std::fgets(buf, sizeof buf, pipe)) out += buf;
  int status = pclose(pipe);
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), kExitResourceLimit);
  auto doc = Document::parse(out);
  EXPECT_EQ(doc["error"]["kind"], "timeout");
}
