#include "gfre/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gfre/extractor.hpp"
#include "gfre/generator.hpp"
#include "gfre/report.hpp"
#include "gfre/verify.hpp"

namespace gfre::cli {

namespace {

namespace fs = std::filesystem;

// IO and argument problems; mapped to exit code 1.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + cfg.out + "'");
  f << text;
  if (!f) throw UsageError("failed writing '" + cfg.out + "'");
}

std::string format_document(const RunConfig& cfg, const nlohmann::json& doc) {
  return cfg.format == ReportFormat::Structured ? doc.dump(2) + "\n" : render_text(doc);
}

nlohmann::json config_echo(const RunConfig& cfg) {
  nlohmann::json j{{"command", cfg.command}, {"threads", cfg.threads}, {"seed", cfg.seed}};
  if (!cfg.input.empty()) j["input"] = cfg.input;
  if (cfg.m) j["m"] = cfg.m;
  if (!cfg.polys.empty()) j["polynomials"] = cfg.polys;
  if (!cfg.corpus.empty()) j["corpus"] = cfg.corpus;
  j["report"] = cfg.format == ReportFormat::Structured ? "structured" : "text";
  return j;
}

nlohmann::json gate_counts(const Netlist& n) {
  nlohmann::json j{{"total", n.gates().size()}};
  for (GateKind k : {GateKind::And, GateKind::Xor, GateKind::Xnor, GateKind::Nand, GateKind::Nor, GateKind::Or,
                     GateKind::Not, GateKind::Buf, GateKind::Const0, GateKind::Const1}) {
    if (std::size_t c = n.count(k)) {
      std::string key(to_string(k));
      std::transform(key.begin(), key.end(), key.begin(), [](unsigned char ch) { return std::tolower(ch); });
      j[key] = c;
    }
  }
  return j;
}

IrrPoly checked_poly(const std::string& text, bool allow_reducible) {
  IrrPoly p = IrrPoly::parse(text);
  if (!allow_reducible && !validate_irreducible(p)) {
    throw UsageError(p.to_string() + " is reducible over GF(2) (use --allow-reducible to override)");
  }
  return p;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.polys.size() != 1) throw UsageError("generate needs exactly one --poly");
  const IrrPoly p = checked_poly(cfg.polys.front(), cfg.allow_reducible);
  if (p.degree() != cfg.m) {
    throw UsageError("--poly has degree " + std::to_string(p.degree()) + " but --m is " + std::to_string(cfg.m));
  }
  Netlist n = gen_mastrovito(cfg.m, p, MastrovitoOptions{cfg.share});
  nlohmann::json summary{{"m", cfg.m},
                         {"polynomial", p.to_string()},
                         {"share_partial_products", cfg.share},
                         {"xor_cost", xor_cost(reduction_matrix(cfg.m, p))}};
  if (cfg.obfuscate_seed) {
    ObfuscationStats st;
    n = obfuscate(n, *cfg.obfuscate_seed, cfg.rewrite_budget.value_or(n.gates().size()), &st);
    summary["obfuscation"] = {{"seed", *cfg.obfuscate_seed}, {"rewrites", st.applied}};
  }
  summary["gates"] = gate_counts(n);

  const std::string header = "# GF(2^" + std::to_string(cfg.m) + ") Mastrovito multiplier, P(x) = " + p.to_string() +
                             "\n";
  emit(cfg, header + n.serialize(), out);
  // The netlist itself may occupy stdout.
  std::ostream& info = cfg.out.empty() ? err : out;
  info << format_document(cfg, summary);
  return 0;
}

int cmd_extract(const RunConfig& cfg, std::ostream& out) {
  const Netlist n = Netlist::parse(read_file(cfg.input));
  const PipelineReport report = full_pipeline(n, cfg.threads);
  ReportOptions opts;
  opts.force_expressions = cfg.expressions;
  opts.config = config_echo(cfg);
  emit(cfg, format_document(cfg, to_json(report, opts)), out);
  return exit_code(report.verdict.status);
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.polys.size() != 1) throw UsageError("verify needs exactly one --poly");
  const IrrPoly p = checked_poly(cfg.polys.front(), cfg.allow_reducible);
  const Netlist n = Netlist::parse(read_file(cfg.input));
  if (p.degree() != n.width()) {
    throw UsageError("--poly has degree " + std::to_string(p.degree()) + " but the netlist width is " +
                     std::to_string(n.width()));
  }
  const RewriteReport rw = rewrite_all(n, cfg.threads);
  const Verdict symbolic = symbolic_check(rw, p);
  const Verdict simulated = n.width() <= 8 || cfg.force ? exhaustive_check(n, p, cfg.force, cfg.threads)
                                                        : random_check(n, p, cfg.vectors, cfg.seed);
  VerdictStatus status = VerdictStatus::Equivalent;
  if (symbolic.status == VerdictStatus::Mismatch || simulated.status == VerdictStatus::Mismatch) {
    status = VerdictStatus::Mismatch;
  }
  nlohmann::json doc;
  doc["tool_version"] = kToolVersion;
  doc["config"] = config_echo(cfg);
  doc["polynomial"] = p.to_string();
  doc["rewrite"] = to_json(rw, cfg.expressions || n.width() <= 16);
  doc["symbolic"] = to_json(symbolic, n.width());
  doc["simulation"] = to_json(simulated, n.width());
  doc["verdict"] = std::string(to_string(status));
  emit(cfg, format_document(cfg, doc), out);
  return exit_code(status);
}

std::vector<std::string> read_corpus(const std::string& path) {
  std::vector<fs::path> files;
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(path);
  }
  std::vector<std::string> polys;
  for (const auto& f : files) {
    std::istringstream in(read_file(f.string()));
    for (std::string line; std::getline(in, line);) {
      line.erase(std::find(line.begin(), line.end(), '#'), line.end());
      line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
                 line.end());
      if (!line.empty()) polys.push_back(line);
    }
  }
  return polys;
}

int cmd_stats(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> polys = cfg.polys;
  if (!cfg.corpus.empty()) {
    auto more = read_corpus(cfg.corpus);
    polys.insert(polys.end(), more.begin(), more.end());
  }
  nlohmann::json table = nlohmann::json::array();
  for (const auto& text : polys) {
    const IrrPoly p = checked_poly(text, cfg.allow_reducible);
    const std::size_t m = p.degree();
    const Netlist n = gen_mastrovito(m, p, MastrovitoOptions{cfg.share});
    nlohmann::json row{{"polynomial", p.to_string()},
                       {"m", m},
                       {"xor_cost", xor_cost(reduction_matrix(m, p))},
                       {"and_gates", n.count(GateKind::And)},
                       {"xor_gates", n.count(GateKind::Xor)},
                       {"gates", n.gates().size()}};
    if (cfg.run_extract) {
      const PipelineReport r = full_pipeline(n, cfg.threads);
      std::size_t peak = 0;
      for (const auto& b : r.rewrite.bits) peak = std::max(peak, b.stats.peak_monomials);
      row["extract_ms"] = static_cast<double>((r.rewrite.total_time + r.extract_time).count()) / 1e6;
      row["peak_monomials"] = peak;
      row["recovered"] = r.extraction ? r.extraction->recovered.to_string() : std::string("-");
      row["verdict"] = std::string(to_string(r.verdict.status));
    }
    table.push_back(std::move(row));
  }
  nlohmann::json doc{{"tool_version", kToolVersion}, {"config", config_echo(cfg)}, {"table", std::move(table)}};
  emit(cfg, format_document(cfg, doc), out);
  return 0;
}

int cmd_obfuscate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Netlist n = Netlist::parse(read_file(cfg.input));
  ObfuscationStats st;
  const Netlist ob = obfuscate(n, cfg.seed, cfg.rewrite_budget.value_or(n.gates().size()), &st);
  emit(cfg, ob.serialize(), out);
  std::ostream& info = cfg.out.empty() ? err : out;
  nlohmann::json summary{{"seed", cfg.seed}, {"rewrites", st.applied}, {"gates_before", gate_counts(n)},
                         {"gates_after", gate_counts(ob)}};
  info << format_document(cfg, summary);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.threads = std::max(1U, std::thread::hardware_concurrency());

  CLI::App app{"Recovers the field polynomial of gate-level GF(2^m) multipliers", "gfre"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string report = "text";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "Random seed");
    sub->add_option("--report", report, "Report format")->check(CLI::IsMember({"text", "structured"}));
    sub->add_option("--out", cfg.out, "Output path (default: standard output)");
    sub->add_flag("--force", cfg.force, "Lift size limits of exhaustive checks");
  };

  auto* generate = app.add_subcommand("generate", "Write a Mastrovito multiplier netlist");
  add_common(generate);
  generate->add_option("--m", cfg.m, "Field width")->required()->check(CLI::Range(2, 4096));
  generate->add_option("--poly", cfg.polys, "Exponent list, e.g. 4,1,0")->required()->expected(1);
  generate->add_flag("--share,!--no-share", cfg.share, "Share partial-product XOR trees across columns");
  generate->add_option("--obfuscate-seed", cfg.obfuscate_seed, "Apply seeded obfuscation");
  generate->add_option("--rewrite-budget", cfg.rewrite_budget, "Obfuscation rewrites (default: gate count)");
  generate->add_flag("--allow-reducible", cfg.allow_reducible, "Accept a reducible polynomial");

  auto* extract = app.add_subcommand("extract", "Recover P(x) and check against the golden model");
  add_common(extract);
  extract->add_option("netlist", cfg.input, "Netlist file ('-' for stdin)")->required();
  extract->add_flag("--expressions", cfg.expressions, "Include per-bit expressions for any m");

  auto* verify = app.add_subcommand("verify", "Check a netlist against a given P(x)");
  add_common(verify);
  verify->add_option("netlist", cfg.input, "Netlist file ('-' for stdin)")->required();
  verify->add_option("--poly", cfg.polys, "Exponent list")->required()->expected(1);
  verify->add_option("--vectors", cfg.vectors, "Random vectors when m > 8");
  verify->add_flag("--expressions", cfg.expressions, "Include per-bit expressions for any m");
  verify->add_flag("--allow-reducible", cfg.allow_reducible, "Accept a reducible polynomial");

  auto* stats = app.add_subcommand("stats", "Compare XOR cost and extraction effort across polynomials");
  add_common(stats);
  stats->add_option("--poly", cfg.polys, "Exponent list (repeatable)")->take_all();
  stats->add_option("--corpus", cfg.corpus, "File or directory of exponent lists, one per line");
  stats->add_flag("--run-extract", cfg.run_extract, "Also time extraction");
  stats->add_flag("--share,!--no-share", cfg.share, "Share partial-product XOR trees across columns");
  stats->add_flag("--allow-reducible", cfg.allow_reducible, "Accept reducible polynomials");

  auto* obf = app.add_subcommand("obfuscate", "Apply seeded equivalence-preserving rewrites");
  add_common(obf);
  obf->add_option("netlist", cfg.input, "Netlist file ('-' for stdin)")->required();
  obf->add_option("--rewrite-budget", cfg.rewrite_budget, "Rewrites to apply (default: gate count)");

  std::vector<const char*> argv{"gfre"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  cfg.format = report == "structured" ? ReportFormat::Structured : ReportFormat::Text;

  try {
    if (generate->parsed()) {
      cfg.command = "generate";
      return cmd_generate(cfg, out, err);
    }
    if (extract->parsed()) {
      cfg.command = "extract";
      return cmd_extract(cfg, out);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg, out);
    }
    if (stats->parsed()) {
      cfg.command = "stats";
      return cmd_stats(cfg, out);
    }
    cfg.command = "obfuscate";
    return cmd_obfuscate(cfg, out, err);
  } catch (const RewriteError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace gfre::cli
