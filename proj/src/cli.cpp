#include "mubasis/cli.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mubasis/arith.hpp"
#include "mubasis/io.hpp"
#include "mubasis/mubasis.hpp"

namespace mubasis::cli {

namespace {

const char* kGrammar = R"txt(Input grammar (whitespace is ignored):
  tuple  := "(" expr "," expr "," expr "," expr ")"
  expr   := ["+"|"-"] term (("+"|"-") term)*
  term   := factor (["*"] factor)*
  factor := integer ["/" integer] | ("s"|"t") ["^" integer]
Multiplication may be implicit ("2s t^2"); "**" is rejected.
The verify basis is a tuple of three such tuples: "((..), (..), (..))".

Exit codes: 0 ok, 2 invalid input, 3 verification failure, 4 resource limit.)txt";

Document strings(const PolyVector& v) {
  Document out = Document::array();
  for (const auto& p : v) out.push_back(p.to_string());
  return out;
}

Document ints(const std::vector<int>& v) {
  Document out = Document::array();
  for (int x : v) out.push_back(x);
  return out;
}

Document matrix_doc(const PolyMatrix& m) {
  Document out = Document::array();
  for (int i = 0; i < m.rows(); ++i) {
    Document row = Document::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

Document verdicts_doc(const std::vector<bounds::Verdict>& vs) {
  Document out = Document::array();
  for (const auto& v : vs)
    out.push_back({{"name", v.name},
                   {"pass", v.pass},
                   {"asserted", v.asserted},
                   {"observed", v.observed.get_str()},
                   {"bound", v.bound.get_str()}});
  return out;
}

Document bounds_doc(const bounds::BoundsReport& r) {
  Document out;
  out["case"] = bounds::case_label(r.applicable);
  out["case_value"] = r.case_value().get_str();
  Document cases;
  for (bounds::Case c : {bounds::Case::general, bounds::Case::height3, bounds::Case::generic_aci, bounds::Case::pd1})
    cases[bounds::case_label(c)] = r.case_values[static_cast<int>(c)].get_str();
  out["case_values"] = cases;
  out["reg_bound"] = r.reg_bound.get_str();
  out["beta2_bound"] = r.beta2_bound.get_str();
  out["beta2_equal_bound"] = r.beta2_equal_bound.get_str();
  out["beta1_bound"] = r.beta1_bound.get_str();
  out["height3_beta1_bound"] = r.height3_beta1_bound.get_str();
  out["height3_beta2_bound"] = r.height3_beta2_bound.get_str();
  out["lazard"] = r.lazard.get_str();
  out["qs_D"] = r.qs_D.get_str();
  out["qs_bound"] = r.qs_bound.get_str();
  out["basis_bound"] = r.basis_bound.get_str();
  out["verdicts"] = verdicts_doc(r.verdicts);
  out["all_asserted_pass"] = r.all_asserted_pass();
  return out;
}

Document resolution_doc(const grobner::FreeResolution& res) {
  auto inv = grobner::resolution_invariants(res);
  Document out;
  out["generators"] = strings(res.generators);
  out["shifts"] = {ints(res.shifts0), ints(res.shifts1), ints(res.shifts2)};
  out["ranks"] = {res.r0(), res.r1(), res.r2()};
  out["d1"] = matrix_doc(res.d1);
  out["d2"] = matrix_doc(res.d2);
  Document betti = Document::array();
  for (const auto& row : inv.table.betti) {
    Document r = Document::array();
    for (const auto& [p, n] : row) r.push_back({p, n});
    betti.push_back(std::move(r));
  }
  out["betti"] = betti;
  out["regularity"] = inv.table.regularity;
  out["gamma1"] = inv.gamma1;
  out["gamma2"] = inv.gamma2;
  return out;
}

Document base_document(const std::string& command, const InputSpec& input) {
  Document doc;
  doc["status"] = "ok";
  doc["command"] = command;
  doc["seed"] = input.seed;
  doc["input"] = input.text;
  return doc;
}

void check_degree(const Parametrization& p, int max_degree) {
  if (p.d > max_degree)
    throw ResourceLimit("input degree " + std::to_string(p.d) + " exceeds --max-degree " + std::to_string(max_degree));
}

Parametrization parse_input(const InputSpec& input, Document& doc) {
  PolyVector a = io::parse_tuple(input.text, 2);
  if (a.size() != 4) throw InvalidInput("expected 4 polynomials, got " + std::to_string(a.size()));
  doc["tuple"] = strings(a);
  Parametrization p = validate(a);
  check_degree(p, input.max_degree);
  doc["d"] = p.d;
  doc["warnings"] = p.warnings;
  return p;
}

void fill_compute(Document& doc, const Parametrization& p, const InputSpec& input) {
  PipelineOptions options;
  options.seed = input.seed;
  PipelineResult r = compute_mu_basis(p, options);
  const PipelineReport& rep = r.report;
  doc["branch"] = branch_name(rep.branch);
  Document basis = Document::array();
  for (const auto& v : r.basis.vectors) basis.push_back(strings(v));
  doc["basis"] = basis;
  doc["alpha"] = r.basis.alpha.get_str();
  doc["degrees"] = {r.basis.degrees[0], r.basis.degrees[1], r.basis.degrees[2]};
  doc["degree_sum"] = r.basis.degree_sum;
  doc["extracted_degree"] = rep.extracted_degree;
  doc["inter_reduced"] = rep.inter_reduced;
  Document res;
  res["shifts0"] = ints(rep.shifts0);
  res["q_shifts"] = ints(rep.q_shifts);
  res["p_shifts"] = ints(rep.p_shifts);
  res["beta2"] = rep.beta2;
  res["gamma1"] = rep.gamma1;
  res["gamma2"] = rep.gamma2;
  res["height"] = rep.height;
  if (rep.branch == Branch::pd1) res["mu"] = ints(rep.mu);
  doc["resolution"] = res;
  if (rep.completion) {
    const auto& c = *rep.completion;
    doc["completion"] = {{"m", c.m},           {"n", c.n},
                         {"deg_F", c.deg_F},   {"deg_M", c.deg_M},
                         {"deg_N", c.deg_N},   {"det", c.det.get_str()},
                         {"bound", c.bound.get_str()}, {"within_bound", c.within_bound},
                         {"steps", c.steps}};
  } else {
    doc["completion"] = nullptr;
  }
  doc["bounds"] = bounds_doc(rep.bounds);
  if (input.timings) {
    Document t;
    for (const auto& [name, sec] : rep.timings) t[name] = sec;
    doc["timings"] = t;
  }
  if (!rep.bounds.all_asserted_pass()) {
    doc["status"] = "error";
    doc["exit_code"] = kExitVerification;
    doc["error"] = {{"kind", "verification"}, {"message", "a proved inequality failed"}};
  }
}

Basis parse_basis(const std::string& text) {
  auto list = io::parse_tuple_list(text, 2);
  if (list.size() != 3) throw InvalidInput("basis must contain 3 vectors, got " + std::to_string(list.size()));
  Basis b;
  for (int i = 0; i < 3; ++i) {
    if (list[i].size() != 4) throw InvalidInput("basis vector " + std::to_string(i + 1) + " must have 4 entries");
    b[i] = list[i];
  }
  return b;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read input file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
  return text;
}

void render(std::ostringstream& out, const Document& value, int indent);

bool is_scalar(const Document& v) { return !v.is_object() && !v.is_array(); }

bool inline_array(const Document& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Document& x) {
           return is_scalar(x) || (x.is_array() && std::all_of(x.begin(), x.end(), is_scalar));
         });
}

std::string scalar_text(const Document& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "none";
  return v.dump();
}

bool flat_object(const Document& v) { return v.is_object() && std::all_of(v.begin(), v.end(), is_scalar); }

std::string inline_text(const Document& v) {
  if (is_scalar(v)) return scalar_text(v);
  if (v.is_object()) {
    std::string s;
    for (const auto& [k, x] : v.items()) s += (s.empty() ? "" : ", ") + k + "=" + scalar_text(x);
    return "{" + s + "}";
  }
  std::string s = "[";
  bool first = true;
  for (const auto& x : v) {
    if (!first) s += ", ";
    first = false;
    s += inline_text(x);
  }
  return s + "]";
}

void render_entry(std::ostringstream& out, const std::string& label, const Document& v, int indent) {
  std::string pad(indent, ' ');
  if (is_scalar(v) || inline_array(v) || flat_object(v) || v.empty()) {
    out << pad << label << ": " << inline_text(v) << "\n";
  } else {
    out << pad << label << ":\n";
    render(out, v, indent + 2);
  }
}

void render(std::ostringstream& out, const Document& value, int indent) {
  if (value.is_object()) {
    for (const auto& [k, v] : value.items()) render_entry(out, k, v, indent);
  } else {
    int i = 1;
    for (const auto& v : value) render_entry(out, std::to_string(i++), v, indent);
  }
}

}  // namespace

std::optional<Command> parse_command(const std::string& name) {
  if (name == "compute") return Command::compute;
  if (name == "resolve") return Command::resolve;
  if (name == "bounds") return Command::bounds;
  if (name == "verify") return Command::verify;
  return std::nullopt;
}

std::string command_name(Command c) {
  switch (c) {
    case Command::compute: return "compute";
    case Command::resolve: return "resolve";
    case Command::bounds: return "bounds";
    case Command::verify: return "verify";
  }
  return "";
}

Document error_document(Command command, const InputSpec& input, int exit_code, const std::string& kind,
                        const std::string& message) {
  return error_document(command_name(command), input, exit_code, kind, message);
}

Document error_document(const std::string& command, const InputSpec& input, int exit_code, const std::string& kind,
                        const std::string& message) {
  Document doc = base_document(command, input);
  doc["status"] = "error";
  doc["exit_code"] = exit_code;
  doc["error"] = {{"kind", kind}, {"message", message}};
  return doc;
}

Outcome run(Command command, const InputSpec& input) {
  Outcome out;
  out.document = base_document(command_name(command), input);
  Document& doc = out.document;
  try {
    Parametrization p = parse_input(input, doc);
    switch (command) {
      case Command::compute:
        fill_compute(doc, p, input);
        break;
      case Command::resolve: {
        PolyVector b = homogenize_ideal(p);
        doc["homogenized"] = strings(b);
        doc["fixed_first_map"] = resolution_doc(grobner::free_resolution(b, true));
        PolyVector nonzero;
        for (const auto& g : b)
          if (!g.is_zero()) nonzero.push_back(g);
        doc["minimal"] = resolution_doc(grobner::free_resolution(nonzero, false));
        doc["height"] = grobner::height(b);
        break;
      }
      case Command::bounds: {
        bounds::BoundsReport r = parametrization_bounds(p);
        doc["bounds"] = bounds_doc(r);
        if (!r.all_asserted_pass()) {
          doc["status"] = "error";
          doc["exit_code"] = kExitVerification;
          doc["error"] = {{"kind", "verification"}, {"message", "a proved inequality failed"}};
        }
        break;
      }
      case Command::verify: {
        if (!input.basis) throw InvalidInput("verify needs a basis argument");
        Basis b = parse_basis(*input.basis);
        Document basis = Document::array();
        for (const auto& v : b) basis.push_back(strings(v));
        doc["basis"] = basis;
        Scalar alpha = verify_mu_basis(b, p);
        doc["alpha"] = alpha.get_str();
        doc["stages"] = {{"syzygies", true}, {"outer_product", true}, {"generates", true}};
        break;
      }
    }
    if (doc.contains("exit_code")) out.exit_code = doc["exit_code"].get<int>();
  } catch (const InvalidInput& e) {
    out = {kExitInvalidInput, error_document(command, input, kExitInvalidInput, "invalid_input", e.what())};
  } catch (const BasisRejected& e) {
    out = {kExitVerification, error_document(command, input, kExitVerification, "basis_rejected", e.what())};
  } catch (const VerificationError& e) {
    out = {kExitVerification, error_document(command, input, kExitVerification, "verification", e.what())};
  } catch (const ResourceLimit& e) {
    out = {kExitResourceLimit, error_document(command, input, kExitResourceLimit, "resource_limit", e.what())};
  } catch (const AlgorithmFailure& e) {
    out = {kExitResourceLimit, error_document(command, input, kExitResourceLimit, "retry_budget", e.what())};
  } catch (const std::bad_alloc&) {
    out = {kExitResourceLimit, error_document(command, input, kExitResourceLimit, "resource_limit", "out of memory")};
  }
  return out;
}

std::string render_text(const Document& doc) {
  std::ostringstream out;
  render(out, doc, 0);
  return out.str();
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compute and verify mu-bases of rational surface parametrizations."};
  app.footer(kGrammar);
  std::string command_text;
  std::vector<std::string> positional;
  std::string input_file;
  InputSpec input;
  bool json = false;
  app.add_option("command", command_text, "compute | resolve | bounds | verify")->required();
  app.add_option("args", positional, "parametrization tuple, then the basis for verify");
  app.add_option("-i,--input", input_file, "read the parametrization from a file");
  app.add_flag("--json", json, "print one JSON document");
  app.add_option("--seed", input.seed, "seed for randomized steps")->default_val(0);
  app.add_option("--timeout", input.timeout, "wall-clock limit in seconds")->default_val(300)->check(CLI::PositiveNumber);
  app.add_option("--max-degree", input.max_degree, "largest accepted input degree")->default_val(20)->check(CLI::NonNegativeNumber);
  app.add_flag("--timings", input.timings, "include stage timings (not reproducible)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run with --help for usage\n";
    return kExitInvalidInput;
  }

  auto command = parse_command(command_text);
  auto emit = [&](const Outcome& o) {
    if (json) {
      out << o.document.dump(2) << "\n";
    } else if (o.exit_code == kExitOk) {
      out << render_text(o.document);
    } else {
      err << render_text(o.document);
    }
    out.flush();
    err.flush();
  };
  auto fail = [&](const std::string& c, const std::string& message) {
    emit({kExitInvalidInput, error_document(c, input, kExitInvalidInput, "invalid_input", message)});
    return kExitInvalidInput;
  };
  if (!command) return fail(command_text, "unknown command " + command_text);

  std::size_t next = 0;
  if (!input_file.empty()) {
    try {
      input.text = read_file(input_file);
    } catch (const InvalidInput& e) {
      return fail(command_text, e.what());
    }
  } else if (next < positional.size()) {
    input.text = positional[next++];
  } else {
    return fail(command_text, "missing parametrization");
  }
  if (*command == Command::verify && next < positional.size()) input.basis = positional[next++];
  if (next < positional.size()) return fail(command_text, "unexpected argument " + positional[next]);

  std::mutex mu;
  std::condition_variable cv;
  bool finished = false;
  std::thread watchdog([&] {
    std::unique_lock lock(mu);
    auto limit = std::chrono::duration<double>(input.timeout);
    if (cv.wait_for(lock, limit, [&] { return finished; })) return;
    std::ostringstream message;
    message << "timeout after " << input.timeout << " s";
    emit({kExitResourceLimit, error_document(*command, input, kExitResourceLimit, "timeout", message.str())});
    std::_Exit(kExitResourceLimit);
  });

  Outcome outcome = run(*command, input);
  {
    std::lock_guard lock(mu);
    finished = true;
  }
  cv.notify_one();
  watchdog.join();
  emit(outcome);
  return outcome.exit_code;
}

}  // namespace mubasis::cli
