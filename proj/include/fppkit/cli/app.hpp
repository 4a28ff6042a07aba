#pragma once

#include <filesystem>
#include <iostream>
#include <optional>
#include <set>

#include "fppkit/cli/commands.hpp"

namespace fppkit::cli {

namespace fs = std::filesystem;

// ---- manifests ------------------------------------------------------------
//
//   # comment
//   seed = 7            global settings come before the first step
//   prime = 73
//   digits = 100
//
//   step hilbert
//   input = conic.ideal  positional argument
//   mod = 7              any other key becomes --key value
//   report = out/h.txt   the step's printed report goes here
//
// Flags take the value true/false. Relative paths are taken from the manifest
// directory; outputs go under the run's output directory.

struct ManifestStep {
  std::size_t line = 0;
  std::string command;
  std::vector<std::pair<std::string, std::string>> args;

  std::optional<std::string> get(const std::string& key) const {
    for (const auto& [k, v] : args)
      if (k == key) return v;
    return std::nullopt;
  }
};

struct PipelineManifest {
  std::optional<std::string> prime;
  std::optional<std::string> digits;
  std::optional<std::string> seed;
  std::vector<ManifestStep> steps;
};

inline const std::set<std::string>& output_keys() {
  static const std::set<std::string> k{"out", "report"};
  return k;
}

inline const std::set<std::string>& input_keys() {
  static const std::set<std::string> k{"input", "table", "rep", "invariant", "reference", "float-file"};
  return k;
}

inline const std::vector<std::string>& step_commands() {
  static const std::vector<std::string> c{"char-table", "decompose71", "ledger",     "split",
                                          "recognize",  "lll-shrink",  "lift-certificate",
                                          "hilbert",    "verify-fpp",  "search-cuts", "reynolds"};
  return c;
}

bool command_accepts(const std::string& command, const std::string& key);

inline bool is_unsigned(const std::string& s) {
  return !s.empty() && s.find_first_not_of("0123456789") == std::string::npos;
}

inline PipelineManifest parse_manifest(const std::string& text) {
  PipelineManifest m;
  std::istringstream is(text);
  std::string raw;
  std::size_t ln = 0;
  std::map<std::string, std::size_t> outputs;
  while (std::getline(is, raw)) {
    ++ln;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.rfind("step", 0) == 0 && (line.size() == 4 || std::isspace(static_cast<unsigned char>(line[4])))) {
      std::string cmd = trim(line.substr(4));
      if (cmd.empty()) throw ParseError(ln, "step needs a command name");
      const auto& known = step_commands();
      if (std::find(known.begin(), known.end(), cmd) == known.end()) throw ParseError(ln, "unknown command '" + cmd + "'");
      m.steps.push_back({ln, cmd, {}});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(ln, "expected 'step <command>' or 'key = value'");
    std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty() || key.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789-") != std::string::npos)
      throw ParseError(ln, "bad key '" + key + "'");
    if (value.empty()) throw ParseError(ln, "missing value for '" + key + "'");
    if (m.steps.empty()) {
      std::optional<std::string>* slot = key == "prime" ? &m.prime : key == "digits" ? &m.digits : key == "seed" ? &m.seed : nullptr;
      if (!slot) throw ParseError(ln, "unknown setting '" + key + "' (prime, digits, seed)");
      if (!is_unsigned(value)) throw ParseError(ln, key + " must be a nonnegative integer, got '" + value + "'");
      if ((key == "prime" && std::stoull(value) < 2) || (key == "digits" && std::stoull(value) < 2))
        throw ParseError(ln, key + " must be at least 2");
      *slot = value;
      continue;
    }
    auto& step = m.steps.back();
    if (step.get(key)) throw ParseError(ln, "duplicate key '" + key + "'");
    if (key != "report" && !command_accepts(step.command, key))
      throw ParseError(ln, "command " + step.command + " has no option '" + key + "'");
    if (output_keys().count(key)) {
      std::string norm = fs::path(value).lexically_normal().string();
      if (outputs.count(norm))
        throw ParseError(ln, "output " + value + " already declared on line " + std::to_string(outputs[norm]));
      outputs[norm] = ln;
    }
    step.args.emplace_back(key, value);
  }
  return m;
}

inline PipelineManifest load_manifest(const std::string& path) { return parse_manifest(mpoly::read_file(path)); }

struct StepReport {
  std::size_t index = 0;  // 1-based
  std::string command;
  int status = kOk;
  std::string output;
  std::string report_path;
};

struct PipelineResult {
  int status = kOk;
  std::optional<std::size_t> failed_step;  // 1-based
  std::string error;
  std::vector<StepReport> steps;

  std::string summary() const {
    std::ostringstream os;
    for (const auto& s : steps)
      os << "step " << s.index << " " << s.command << ": " << (s.status == kOk ? "ok" : "FAILED (status " + std::to_string(s.status) + ")")
         << (s.report_path.empty() ? "" : " -> " + s.report_path) << "\n";
    if (!error.empty()) os << "error: " << error << "\n";
    os << "pipeline: " << (status == kOk ? "success" : "failure at step " + std::to_string(*failed_step)) << "\n";
    return os.str();
  }
};

struct RunOptions {
  fs::path base_dir = ".";  // relative inputs
  fs::path out_dir = ".";   // relative outputs
  bool force = false;       // allow overwriting existing outputs
};

int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> v;
  for (std::string t; is >> t;) v.push_back(t);
  return v;
}

inline PipelineResult run_pipeline(const PipelineManifest& m, const RunOptions& o = {}) {
  PipelineResult res;
  auto fail = [&](std::size_t idx, int status, const std::string& why) {
    res.status = status;
    res.failed_step = idx;
    res.error = why;
    return res;
  };
  // resolve paths; an input that an earlier step writes is read from out_dir
  std::set<std::string> produced;
  std::vector<std::vector<std::pair<std::string, std::string>>> resolved;
  for (std::size_t i = 0; i < m.steps.size(); ++i) {
    std::vector<std::pair<std::string, std::string>> args;
    for (const auto& [k, v] : m.steps[i].args) {
      fs::path p(v);
      if (output_keys().count(k)) {
        std::string norm = p.lexically_normal().string();
        produced.insert(norm);
        if (p.is_relative()) p = o.out_dir / p;
        if (fs::exists(p) && !o.force) return fail(i + 1, kError, "output " + p.string() + " exists (use --force)");
        args.emplace_back(k, p.string());
      } else if (input_keys().count(k)) {
        if (p.is_relative()) p = (produced.count(p.lexically_normal().string()) ? o.out_dir : o.base_dir) / p;
        args.emplace_back(k, p.string());
      } else {
        args.emplace_back(k, v);
      }
    }
    resolved.push_back(std::move(args));
  }
  for (std::size_t i = 0; i < m.steps.size(); ++i) {
    const auto& step = m.steps[i];
    StepReport rep{i + 1, step.command, kOk, {}, {}};
    std::vector<std::string> argv{step.command};
    for (const auto& [k, v] : resolved[i]) {
      if (input_keys().count(k) && !fs::exists(v)) {
        rep.status = kError;
        rep.output = "missing input " + v + "\n";
        res.steps.push_back(rep);
        return fail(i + 1, kError, "step " + std::to_string(i + 1) + ": missing input " + v);
      }
      if (k == "report") {
        rep.report_path = v;
        continue;
      }
      if (k == "input") {
        argv.push_back(v);
      } else if (v == "true") {
        argv.push_back("--" + k);
      } else if (v != "false") {
        argv.push_back("--" + k);
        for (auto& t : split_ws(v)) argv.push_back(t);
      }
    }
    auto inject = [&](const std::optional<std::string>& val, std::initializer_list<const char*> keys) {
      if (!val) return;
      for (const char* k : keys)
        if (command_accepts(step.command, k) && !step.get(k)) argv.insert(argv.end(), {std::string("--") + k, *val});
    };
    inject(m.seed, {"seed"});
    inject(m.prime, {"mod", "prime"});
    inject(m.digits, {"digits"});
    for (const auto& [k, v] : resolved[i])
      if (output_keys().count(k) && fs::path(v).has_parent_path()) fs::create_directories(fs::path(v).parent_path());
    std::ostringstream os;
    rep.status = run_command_line(argv, os, os);
    rep.output = os.str();
    if (!rep.report_path.empty()) write_file(rep.report_path, rep.output);
    res.steps.push_back(rep);
    if (rep.status != kOk) return fail(i + 1, rep.status, "step " + std::to_string(i + 1) + " (" + step.command + ") failed");
  }
  return res;
}

// ---- argument surface -----------------------------------------------------

struct Bindings {
  CharTableArgs char_table;
  Decompose71Args decompose;
  long total = 0, lefschetz = 0, h2_trace = 0;
  std::string path;
  RecognizeArgs recognize;
  LiftArgs lift;
  HilbertArgs hilbert;
  VerifyArgs verify;
  SearchCutsArgs cuts;
  std::string manifest;
  std::string out_dir;
  bool force = false;
};

// Registers every command; the chosen one stores its status in `status`.
inline void add_commands(CLI::App& app, Bindings& b, std::ostream& out, int& status) {
  app.require_subcommand(1, 1);
  auto* s = app.add_subcommand("char-table", "character table of a group (Dixon-Schneider), written as CSV");
  s->add_option("--group", b.char_table.group, "g648, g72, ghat72, sl2z3, q8 or cN")->capture_default_str();
  s->add_option("--dixon-prime", b.char_table.dixon_prime, "prime q = 1 mod exponent for the Dixon reduction");
  s->add_option("--out", b.char_table.out, "CSV output path");
  s->add_option("--reference", b.char_table.reference, "printed table to compare against");
  s->callback([&] { status = char_table(b.char_table, out); });

  s = app.add_subcommand("decompose71", "unique 71-dimensional G648 character restricting regularly");
  s->add_option("--table", b.decompose.table, "CSV from char-table --group g648")->required();
  s->add_option("--reference", b.decompose.reference, "printed table for row numbering");
  s->callback([&] { status = decompose71(b.decompose, out); });

  s = app.add_subcommand("ledger", "section dimensions on the cover tower with Lefschetz data");
  s->callback([&] { status = ledger(out); });

  s = app.add_subcommand("split", "C3 eigenspace split from a dimension and a trace");
  s->add_option("--total", b.total, "dimension of the space")->required();
  s->add_option("--lefschetz", b.lefschetz, "holomorphic Lefschetz sum")->required();
  s->add_option("--h2-trace", b.h2_trace, "trace on H^2, subtracted from the sum")->capture_default_str();
  s->callback([&] { status = split(b.total, b.lefschetz, b.h2_trace, out); });

  s = app.add_subcommand("reynolds", "Reynolds projector of a finite matrix group");
  s->add_option("--rep", b.path, "matrix file listing every group element")->required();
  s->callback([&] { status = reynolds(b.path, out); });

  s = app.add_subcommand("recognize", "minimal polynomial from a p-adic or floating approximation");
  s->add_option("--padic", b.recognize.padic, "v,p,k with v an integer or rational");
  s->add_option("--float", b.recognize.value, "decimal value, or re,im");
  s->add_option("--float-file", b.recognize.value_file, "file whose first line is the value");
  s->add_option("--deg", b.recognize.degree, "maximal degree")->capture_default_str();
  s->add_option("--height", b.recognize.height, "coefficient bound (p-adic)")->capture_default_str();
  s->add_option("--digits", b.recognize.digits, "working digits (float; default FPPKIT_DIGITS or 100)");
  s->add_flag("--force", b.recognize.force, "skip the p-adic precision floor");
  s->callback([&] { status = recognize(b.recognize, out); });

  s = app.add_subcommand("lll-shrink", "LLL-shrink an integer equation basis");
  s->add_option("input", b.path, "matrix file, whitespace-separated integer rows")->required();
  s->callback([&] { status = lll_shrink(b.path, out); });

  s = app.add_subcommand("lift-certificate", "solve a certificate template mod p and lift it");
  s->add_option("input", b.lift.template_file, "template file")->required();
  s->add_option("--prime", b.lift.prime, "prime p (overrides the template)");
  s->add_option("--steps", b.lift.steps, "lifting steps")->capture_default_str();
  s->add_option("--reconstruct", b.lift.reconstruct, "num_bound den_bound")->expected(2);
  s->callback([&] { status = lift_certificate(b.lift, out); });

  s = app.add_subcommand("hilbert", "Hilbert series and polynomial of an ideal");
  s->add_option("input", b.hilbert.ideal, "ideal file")->required();
  s->add_option("--order", b.hilbert.order, "grevlex or lex");
  s->add_option("--mod", b.hilbert.mod, "reduce mod p first");
  s->add_option("--degree-cap", b.hilbert.degree_cap, "abort Buchberger above this S-pair degree");
  s->callback([&] { status = hilbert(b.hilbert, out); });

  s = app.add_subcommand("verify-fpp", "Hilbert polynomial check and Jacobian-minor smoothness probes");
  s->add_option("input", b.verify.ideal, "ideal file")->required();
  s->add_option("--mod", b.verify.mod, "prime")->required();
  s->add_option("--seed", b.verify.seed, "minor selection seed")->capture_default_str();
  s->add_option("--minors", b.verify.minors, "minors per probe")->capture_default_str();
  s->add_option("--probes", b.verify.probes, "number of probes")->capture_default_str();
  s->add_option("--dim", b.verify.dim, "expected projective dimension")->capture_default_str();
  s->add_option("--expected", b.verify.expected, "Hilbert polynomial coefficients c0 c1 ... (default 18m^2-9m+1)")
      ->expected(1, -1);
  s->add_option("--degree-cap", b.verify.degree_cap, "Buchberger degree cap");
  s->callback([&] { status = verify_fpp(b.verify, out); });

  s = app.add_subcommand("search-cuts", "hyperplanes with singular intersection, by brute force over F_p");
  s->add_option("input", b.cuts.ideal, "ideal file")->required();
  s->add_option("--mod", b.cuts.mod, "prime")->required();
  s->add_option("--invariant", b.cuts.invariant, "matrix file; only fixed coefficient vectors are tried");
  s->add_option("--budget", b.cuts.budget, "hyperplanes to examine at most")->capture_default_str();
  s->add_option("--minors", b.cuts.minors, "minors per cut, 0 for all")->capture_default_str();
  s->add_option("--seed", b.cuts.seed, "minor selection seed")->capture_default_str();
  s->callback([&] { status = search_cuts(b.cuts, out); });

  s = app.add_subcommand("run", "execute a pipeline manifest");
  s->add_option("input", b.manifest, "manifest file")->required();
  s->add_option("--out-dir", b.out_dir, "directory for relative outputs (default: next to the manifest)");
  s->add_flag("--force", b.force, "overwrite existing outputs");
  s->callback([&] {
    RunOptions o;
    o.base_dir = fs::path(b.manifest).parent_path();
    if (o.base_dir.empty()) o.base_dir = ".";
    o.out_dir = b.out_dir.empty() ? o.base_dir : fs::path(b.out_dir);
    o.force = b.force;
    auto r = run_pipeline(load_manifest(b.manifest), o);
    out << r.summary();
    status = r.status;
  });
}

inline bool command_accepts(const std::string& command, const std::string& key) {
  CLI::App app;
  Bindings b;
  int status = 0;
  add_commands(app, b, std::cout, status);
  auto* sub = app.get_subcommand_no_throw(command);
  if (!sub) return false;
  return sub->get_option_no_throw(key == "input" ? "input" : "--" + key) != nullptr;
}

inline int run_command_line(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"fppkit: exact kernels for fake projective plane computations", "fppkit"};
  Bindings b;
  int status = kOk;
  add_commands(app, b, out, status);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return status;
}

}  // namespace fppkit::cli
