#include "susmat/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "susmat/verify.hpp"

namespace susmat {

namespace {

constexpr int kUsageError = 64;

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(s.substr(pos, comma - pos));
    pos = comma + 1;
  }
  return out;
}

std::vector<Scalar> parse_vector(const Ring& ring, const std::string& csv) {
  std::vector<Scalar> v;
  for (const auto& item : split_csv(csv)) v.push_back(ring.parse(item));
  return v;
}

// "k" or "lo..hi"
std::pair<int, int> parse_range(const std::string& s) {
  auto dots = s.find("..");
  if (dots == std::string::npos) {
    int k = std::stoi(s);
    return {k, k};
  }
  return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
}

struct GenConfig {
  int n = 0;
  std::string a_csv, b_csv;
  std::string flavor = "plain";
  bool with_det = false;
  std::string ring = "int";
  std::string format = "text";
};

int cmd_gen(const GenConfig& cfg, std::ostream& out) {
  Ring ring(RingDescriptor::parse(cfg.ring));
  auto a = parse_vector(ring, cfg.a_csv);
  auto b = parse_vector(ring, cfg.b_csv);
  if (static_cast<int>(a.size()) != cfg.n || static_cast<int>(b.size()) != cfg.n)
    throw UsageError("--a/--b must both have exactly n entries");

  std::vector<SuslinMatrix> mats;
  if (cfg.flavor == "plain" || cfg.flavor == "both") mats.push_back(suslin_matrix(a, b));
  if (cfg.flavor == "bar" || cfg.flavor == "both") mats.push_back(suslin_bar(a, b));
  if (mats.empty()) throw UsageError("--flavor must be plain, bar or both");

  if (cfg.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& m : mats) {
      nlohmann::json jm = m.to_json();
      if (cfg.with_det) jm["det"] = det_division_free(m.mat).to_string();
      j.push_back(std::move(jm));
    }
    out << (j.size() == 1 ? j[0] : j).dump() << '\n';
    return 0;
  }
  for (const auto& m : mats) {
    out << m.mat.to_text() << '\n';
    if (cfg.with_det) out << "det = " << det_division_free(m.mat).to_string() << '\n';
  }
  return 0;
}

struct BasesConfig {
  int n = 0;
  std::string ring = "int";
  std::string format = "text";
};

int cmd_bases(const BasesConfig& cfg, std::ostream& out) {
  Ring ring(RingDescriptor::parse(cfg.ring));
  auto [b1, b0] = build_suslin_bases(ring, cfg.n);
  if (cfg.format == "json") {
    out << nlohmann::json({{"B1", b1.to_json()}, {"B0", b0.to_json()}}).dump() << '\n';
    return 0;
  }
  out << "B1 = " << b1.to_text() << '\n';
  out << "B0 = " << b0.to_text() << '\n';
  return 0;
}

struct BlocksConfig {
  int n = 0;
  std::string x_json;
  std::string p_csv, a_str, f_csv, b_str;
  bool formula = false;
  std::string ring = "int";
  std::string format = "text";
};

HyperbolicElement element_from_config(const Ring& ring, const BlocksConfig& cfg) {
  if (!cfg.x_json.empty()) {
    std::string text = cfg.x_json;
    if (text.size() > 1 && text[0] == '@') {
      std::ifstream in(text.substr(1));
      if (!in) throw UsageError("cannot open x file '" + text.substr(1) + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    HyperbolicElement x = HyperbolicElement::from_json(ring, nlohmann::json::parse(text));
    if (x.rank() != cfg.n) throw UsageError("x rank does not match --n");
    return x;
  }
  auto p = cfg.p_csv.empty() ? std::vector<Scalar>{} : parse_vector(ring, cfg.p_csv);
  auto f = cfg.f_csv.empty() ? std::vector<Scalar>{} : parse_vector(ring, cfg.f_csv);
  if (cfg.a_str.empty() || cfg.b_str.empty())
    throw UsageError("provide --x or all of --p/--a/--f/--b (--p/--f may be empty at n=0)");
  if (static_cast<int>(p.size()) != cfg.n || static_cast<int>(f.size()) != cfg.n)
    throw UsageError("--p/--f must have exactly n entries");
  return HyperbolicElement(std::move(p), ring.parse(cfg.a_str), std::move(f),
                           ring.parse(cfg.b_str));
}

int cmd_blocks(const BlocksConfig& cfg, std::ostream& out) {
  Ring ring(RingDescriptor::parse(cfg.ring));
  HyperbolicElement x = element_from_config(ring, cfg);
  auto act = phi_blocks(x);
  if (cfg.format == "json") {
    nlohmann::json j = {{"x", x.to_json()},
                        {"q", hyperbolic_q(x).to_string()},
                        {"phi10", mat_to_json(act.phi10.mat)},
                        {"phi01", mat_to_json(act.phi01.mat)}};
    if (cfg.formula) {
      j["phi10_split_formula"] = mat_to_json(phi_block_formula(x, PhiBlock::phi10).mat);
      j["phi01_split_formula"] = mat_to_json(phi_block_formula(x, PhiBlock::phi01).mat);
    }
    out << j.dump() << '\n';
    return 0;
  }
  out << "q(x) = " << hyperbolic_q(x).to_string() << '\n';
  out << "phi10 (odd -> even, mask bases):\n" << act.phi10.mat.to_text() << '\n';
  out << "phi01 (even -> odd, mask bases):\n" << act.phi01.mat.to_text() << '\n';
  if (cfg.formula) {
    out << "phi10 split block formula:\n"
        << phi_block_formula(x, PhiBlock::phi10).mat.to_text() << '\n';
    out << "phi01 split block formula:\n"
        << phi_block_formula(x, PhiBlock::phi01).mat.to_text() << '\n';
  }
  return 0;
}

struct VerifyConfig {
  std::string suites = "all";
  std::string range = "0..3";
  std::string ring = "int";
  std::string mode = "symbolic";
  int trials = 100;
  std::uint64_t seed = kDefaultSeed;
  int symbolic_max = 3;
  bool experimental_gl = false;
  bool timings = false;
  std::string format = "jsonl";
};

int cmd_verify(const VerifyConfig& cfg, std::ostream& out) {
  SuiteOptions opts;
  opts.ring = RingDescriptor::parse(cfg.ring);
  auto [lo, hi] = parse_range(cfg.range);
  opts.n_min = lo;
  opts.n_max = hi;
  if (cfg.mode == "symbolic")
    opts.symbolic = true;
  else if (cfg.mode == "randomized")
    opts.symbolic = false;
  else
    throw UsageError("--mode must be symbolic or randomized");
  opts.trials = cfg.trials;
  opts.seed = cfg.seed;
  opts.symbolic_max_n = cfg.symbolic_max;
  opts.experimental_gl = cfg.experimental_gl;

  auto reports = run_suite(split_csv(cfg.suites), opts);
  for (const auto& r : reports) {
    if (cfg.format == "text")
      out << r.to_text() << '\n';
    else
      out << r.to_json(cfg.timings).dump() << '\n';
  }
  return count_failures(reports);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Suslin matrices, Clifford actions on exterior algebras, "
               "and an identity verification harness over commutative rings"};
  app.require_subcommand(1);

  GenConfig gen;
  auto* cgen = app.add_subcommand("gen", "Build the recursive Suslin matrix S_n(a, b)");
  cgen->add_option("--n", gen.n, "Vector length n >= 1")->required();
  cgen->add_option("--a", gen.a_csv, "First vector, comma-separated scalars")->required();
  cgen->add_option("--b", gen.b_csv, "Second vector, comma-separated scalars")->required();
  cgen->add_option("--flavor", gen.flavor, "plain | bar | both (default plain)");
  cgen->add_flag("--det", gen.with_det, "Also print the determinant");
  cgen->add_option("--ring", gen.ring, "int | mod:<m> | poly:v1,v2,...")
      ->envname("SUSMAT_RING");
  cgen->add_option("--format", gen.format, "text | json");

  BasesConfig bases;
  auto* cbases = app.add_subcommand("bases", "Print the ordered bases B1 and B0");
  cbases->add_option("--n", bases.n, "Rank n >= 0")->required();
  cbases->add_option("--ring", bases.ring, "Ring for the +-1 coefficients")
      ->envname("SUSMAT_RING");
  cbases->add_option("--format", bases.format, "text | json");

  BlocksConfig blocks;
  auto* cblocks = app.add_subcommand("blocks", "Print the action blocks phi10/phi01 of x");
  cblocks->add_option("--n", blocks.n, "Rank of x")->required();
  cblocks->add_option("--x", blocks.x_json, "Element as inline JSON or @file");
  cblocks->add_option("--p", blocks.p_csv, "p entries, comma-separated");
  cblocks->add_option("--a", blocks.a_str, "a entry");
  cblocks->add_option("--f", blocks.f_csv, "f entries, comma-separated");
  cblocks->add_option("--b", blocks.b_str, "b entry");
  cblocks->add_flag("--formula", blocks.formula, "Also print the split block formulas");
  cblocks->add_option("--ring", blocks.ring, "int | mod:<m> | poly:v1,v2,...")
      ->envname("SUSMAT_RING");
  cblocks->add_option("--format", blocks.format, "text | json");

  VerifyConfig verify;
  auto* cverify = app.add_subcommand("verify", "Run identity verification suites");
  cverify->add_option("--suite", verify.suites, "Comma-separated suite ids or 'all'");
  cverify->add_option("--n", verify.range, "Rank or range, e.g. 2 or 0..3");
  cverify->add_option("--ring", verify.ring, "Ring for randomized mode")
      ->envname("SUSMAT_RING");
  cverify->add_option("--mode", verify.mode, "symbolic | randomized");
  cverify->add_option("--trials", verify.trials, "Randomized trials per rank");
  cverify->add_option("--seed", verify.seed, "Seed (default 1729, documented)");
  cverify->add_option("--symbolic-max", verify.symbolic_max,
                      "Raise the symbolic rank cap (default 3)");
  cverify->add_flag("--experimental-gl", verify.experimental_gl,
                    "Also run GL samples; reported, never counted");
  cverify->add_flag("--timings", verify.timings, "Include wall_ms in reports");
  cverify->add_option("--format", verify.format, "jsonl | text");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (cgen->parsed()) return cmd_gen(gen, out);
    if (cbases->parsed()) return cmd_bases(bases, out);
    if (cblocks->parsed()) return cmd_blocks(blocks, out);
    if (cverify->parsed()) return cmd_verify(verify, out);
    err << "usage error: no subcommand\n";
    return kUsageError;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const nlohmann::json::exception& e) {
    err << "usage error: bad JSON input: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 70;  // internal software error
  }
}

}  // namespace susmat
