#include "upq/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "upq/canonical.hpp"
#include "upq/io.hpp"
#include "upq/kernels.hpp"
#include "upq/lie.hpp"
#include "upq/sampler.hpp"

namespace upq::cli {
namespace {

using nlohmann::json;

struct Options {
  double tol = kMembershipTol;
  double rank_threshold = kRankThreshold;
  double zero_tol = kSpectralZeroTol;
  double gap_tol = kSpectralGapTol;
  double t_tol = kTEqualTol;
  double pd_tol = kPositiveDefiniteTol;

  std::string file;
  std::string file2;
  std::string family;
  int p = 1;
  int q = 1;
  std::uint64_t seed = 0;
  double t_max = 3.0;
  double scale = 1.0;

  SpectralTolerances spectral() const { return {tol, rank_threshold, zero_tol, gap_tol}; }
  CanonicalTolerances canonical() const { return {spectral(), t_tol}; }
  LieTolerances lie() const { return {tol, pd_tol}; }
};

struct Input {
  std::string bytes;
  json doc;
};

Input read_input(const std::string& path, std::istream& in) {
  Input input;
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    input.bytes = buf.str();
  } else {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << file.rdbuf();
    input.bytes = buf.str();
  }
  try {
    input.doc = json::parse(input.bytes);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
  return input;
}

MatrixFile read_matrix(const Input& input, MatrixLayout layout) {
  MatrixFile file = matrix_file_from_json(input.doc);
  if (file.layout != layout) {
    throw InputError(layout == MatrixLayout::Full ? "expected a full n x n matrix file"
                                                  : "expected an offdiag (p x q) matrix file");
  }
  return file;
}

json tolerances_json(const Options& o) {
  return {{"membership", o.tol},      {"rank_threshold", o.rank_threshold},
          {"spectral_zero", o.zero_tol}, {"spectral_gap", o.gap_tol},
          {"t_equal", o.t_tol},       {"positive_definite", o.pd_tol}};
}

json report(const std::string& command, const std::string& digest, const Options& o) {
  return {{"command", command},
          {"input_digest", digest},
          {"tolerances", tolerances_json(o)},
          {"kernel_isa", std::string(kernels::isa_name(kernels::active_isa()))}};
}

json complex_json(Complex c) { return json::array({c.real(), c.imag()}); }

json block_json(const HyperbolicBlock& b) {
  return {{"kind", b.kind == BlockKind::Hyperbolic ? "hyperbolic" : "iota"},
          {"t", b.t},
          {"sign", b.sign}};
}

HyperbolicBlock block_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const int sign = j.at("sign").get<int>();
  if (sign != 1 && sign != -1) throw InputError("block sign must be +1 or -1");
  if (kind == "hyperbolic") return HyperbolicBlock::hyperbolic(j.at("t").get<double>(), sign);
  if (kind == "iota") return HyperbolicBlock::iota(sign);
  throw InputError("unknown block kind '" + kind + "'");
}

json invariant_json(const CanonicalInvariant& inv) {
  auto arr = json::array();
  for (const auto& b : inv.blocks) arr.push_back(block_json(b));
  return arr;
}

json matrix_json(const ComplexMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", matrix_entries_json(m)}};
}

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

void emit_matrix(std::ostream& out, MatrixFile file, const json& provenance) {
  file.extra["provenance"] = provenance;
  out << format_matrix_file(file);
}

int cmd_check(const Options& o, std::istream& in, std::ostream& out) {
  const Input input = read_input(o.file, in);
  const MatrixFile file = read_matrix(input, MatrixLayout::Full);
  const auto metric = file.metric();
  const ComplexMatrix& m = file.matrix;

  const double residual = membership_residual(m, metric);
  const bool member = residual <= o.tol;
  const bool hermitian = is_hermitian(m, o.tol);
  json doc = report("check", fnv1a64_hex(input.bytes), o);
  doc["result"] = {{"p", metric.p()},
                   {"q", metric.q()},
                   {"membership_residual", residual},
                   {"is_pseudo_unitary", member},
                   {"hermitian_residual", hermitian_residual(m)},
                   {"is_hermitian", hermitian},
                   {"is_hermitian_member", member && hermitian},
                   {"block_identities_residual", block_identities_residual(m, metric)},
                   {"determinant", complex_json(m.determinant())}};
  emit(out, doc);
  return member ? kExitOk : kExitNegative;
}

int cmd_invert(const Options& o, std::istream& in, std::ostream& out) {
  const Input input = read_input(o.file, in);
  MatrixFile file = read_matrix(input, MatrixLayout::Full);
  file.matrix = fast_inverse(file.matrix, file.metric(), o.tol);
  file.extra = json::object();
  emit_matrix(out, std::move(file), report("invert", fnv1a64_hex(input.bytes), o));
  return kExitOk;
}

int cmd_generators(const Options& o, std::istream& in, std::ostream& out) {
  const Input input = read_input(o.file, in);
  const MatrixFile file = read_matrix(input, MatrixLayout::Full);
  const GeneratorSet gens = extract_generators(file.matrix, file.metric(), o.spectral());

  auto list = json::array();
  for (std::size_t j = 0; j < gens.rank(); ++j) {
    json z = json::array();
    for (Eigen::Index i = 0; i < gens.generators[j].z.size(); ++i) {
      z.push_back(complex_json(gens.generators[j].z[i]));
    }
    list.push_back({{"lambda", gens.generators[j].lambda},
                    {"alpha", gens.alpha(j)},
                    {"beta", gens.beta(j)},
                    {"z", z}});
  }
  auto violations = json::array();
  for (const auto& v : validate_generators(gens)) {
    violations.push_back({{"kind", std::string(violation_name(v.kind))}, {"detail", v.detail}});
  }
  json doc = report("generators", fnv1a64_hex(input.bytes), o);
  doc["result"] = {{"sigma", gens.sign},
                   {"k", gens.rank()},
                   {"generators", list},
                   {"violations", violations}};
  emit(out, doc);
  return kExitOk;
}

int cmd_decompose(const Options& o, std::istream& in, std::ostream& out) {
  const Input input = read_input(o.file, in);
  const MatrixFile file = read_matrix(input, MatrixLayout::Full);
  const BlockDecomposition d = block_decompose(file.matrix, file.metric(), o.canonical());

  auto blocks = json::array();
  auto raw = json::array();
  for (std::size_t j = 0; j < d.blocks.size(); ++j) {
    blocks.push_back(block_json(d.blocks[j]));
    raw.push_back(matrix_entries_json(d.raw_blocks[j]));
  }
  json doc = report("decompose", fnv1a64_hex(input.bytes), o);
  doc["result"] = {{"p", d.metric.p()},
                   {"q", d.metric.q()},
                   {"sigma", d.sign},
                   {"frame", matrix_json(d.frame)},
                   {"blocks", blocks},
                   {"raw_blocks", raw},
                   {"reconstruction_residual", d.reconstruction_residual},
                   {"invariant", invariant_json(canonical_invariant(d.blocks, o.t_tol))}};
  emit(out, doc);
  return kExitOk;
}

int cmd_invariants(const Options& o, std::istream& in, std::ostream& out) {
  const Input input = read_input(o.file, in);
  json doc = report("invariants", fnv1a64_hex(input.bytes), o);
  CanonicalInvariant inv;
  if (input.doc.is_object() && input.doc.value("command", std::string()) == "decompose") {
    std::vector<HyperbolicBlock> blocks;
    for (const auto& b : input.doc.at("result").at("blocks")) blocks.push_back(block_from_json(b));
    inv = canonical_invariant(blocks, o.t_tol);
    doc["source"] = "decomposition";
  } else {
    const MatrixFile file = read_matrix(input, MatrixLayout::Full);
    inv = canonical_invariant(file.matrix, file.metric(), o.canonical());
    doc["source"] = "matrix";
  }
  doc["result"] = {{"invariant", invariant_json(inv)}};
  emit(out, doc);
  return kExitOk;
}

int cmd_equiv(const Options& o, std::istream& in, std::ostream& out) {
  if (o.file == "-" && o.file2 == "-") throw InputError("only one input may come from stdin");
  const Input a = read_input(o.file, in);
  const Input b = read_input(o.file2, in);
  const MatrixFile fa = read_matrix(a, MatrixLayout::Full);
  const MatrixFile fb = read_matrix(b, MatrixLayout::Full);
  if (fa.p != fb.p || fa.q != fb.q) throw InputError("inputs have different signatures");

  const auto tol = o.canonical();
  const CanonicalInvariant ia = canonical_invariant(fa.matrix, fa.metric(), tol);
  const CanonicalInvariant ib = canonical_invariant(fb.matrix, fb.metric(), tol);
  const bool equivalent = same_invariant(ia, ib, o.t_tol);
  json doc = report("equiv", fnv1a64_hex(a.bytes + b.bytes), o);
  doc["result"] = {{"equivalent", equivalent},
                   {"invariant_1", invariant_json(ia)},
                   {"invariant_2", invariant_json(ib)}};
  emit(out, doc);
  return equivalent ? kExitOk : kExitNegative;
}

int cmd_exp(const Options& o, std::istream& in, std::ostream& out) {
  const Input input = read_input(o.file, in);
  const MatrixFile file = read_matrix(input, MatrixLayout::OffDiagonal);
  MatrixFile result{file.p, file.q, MatrixLayout::Full,
                    exp_us(LieElement(file.metric(), file.matrix)), json::object()};
  emit_matrix(out, std::move(result), report("exp", fnv1a64_hex(input.bytes), o));
  return kExitOk;
}

int cmd_log(const Options& o, std::istream& in, std::ostream& out) {
  const Input input = read_input(o.file, in);
  const MatrixFile file = read_matrix(input, MatrixLayout::Full);
  const LieElement t = log_us(file.matrix, file.metric(), o.lie());
  MatrixFile result{file.p, file.q, MatrixLayout::OffDiagonal, t.block(), json::object()};
  emit_matrix(out, std::move(result), report("log", fnv1a64_hex(input.bytes), o));
  return kExitOk;
}

int cmd_sample(const Options& o, std::ostream& out) {
  const SignatureMetric metric(o.p, o.q);
  json provenance = report("sample", "", o);
  provenance["family"] = o.family;
  provenance["seed"] = o.seed;
  provenance["t_max"] = o.t_max;
  provenance["scale"] = o.scale;

  if (o.family == "uspp") {
    SampleSpec spec;
    spec.metric = metric;
    spec.seed = o.seed;
    spec.t_distribution = UniformT{o.t_max};
    const UsppSample s = sample_us_pp(spec);
    MatrixFile file{o.p, o.q, MatrixLayout::Full, s.matrix, json::object()};
    auto blocks = json::array();
    for (const auto& b : s.truth.blocks) blocks.push_back(block_json(b));
    file.extra["ground_truth"] = {
        {"blocks", blocks},
        {"frame", matrix_json(s.truth.frame)},
        {"invariant", invariant_json(canonical_invariant(s.truth.blocks, o.t_tol))}};
    emit_matrix(out, std::move(file), provenance);
  } else if (o.family == "lie") {
    const LieElement t = sample_us_lie(metric, o.seed, o.scale);
    emit_matrix(out, {o.p, o.q, MatrixLayout::OffDiagonal, t.block(), json::object()},
                provenance);
  } else if (o.family == "upq") {
    UpqSampleOptions opts;
    opts.scale = o.scale;
    emit_matrix(out, {o.p, o.q, MatrixLayout::Full, sample_upq(metric, o.seed, opts), json::object()},
                provenance);
  } else if (o.family == "haar") {
    emit_matrix(out,
                {o.p, o.q, MatrixLayout::Full, haar_unitary(metric.n(), o.seed), json::object()},
                provenance);
  } else {
    throw InputError("unknown family '" + o.family + "'");
  }
  return kExitOk;
}

int cmd_dim(const Options& o, std::ostream& out) {
  const SignatureMetric metric(o.p, o.q);
  json doc = report("dim", "", o);
  doc["result"] = {{"p", o.p},
                   {"q", o.q},
                   {"complex_dimension", dimension_check(metric)},
                   {"real_dimension", 2 * dimension_check(metric)}};
  emit(out, doc);
  return kExitOk;
}

void add_tolerance_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--tol", o.tol, "membership / Hermitian tolerance")->capture_default_str();
  cmd->add_option("--rank-threshold", o.rank_threshold, "zero/nonzero eigenvalue cutoff")
      ->capture_default_str();
  cmd->add_option("--zero-tol", o.zero_tol, "eigenvalues treated as zero")->capture_default_str();
  cmd->add_option("--gap-tol", o.gap_tol, "slack on the |lambda| >= 2 bound")
      ->capture_default_str();
  cmd->add_option("--t-tol", o.t_tol, "tolerance on hyperbolic parameters")
      ->capture_default_str();
  cmd->add_option("--pd-tol", o.pd_tol, "positive-definiteness threshold (relative)")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Options o;
  if (const char* env = std::getenv(kToleranceEnv)) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0)) {
      err << "upq: ignoring invalid " << kToleranceEnv << "='" << env << "'\n";
    } else {
      o.tol = v;
    }
  }

  CLI::App app{"Hermitian elements of the pseudo-unitary group U(p,q)", "upq"};
  app.require_subcommand(1);

  auto* check = app.add_subcommand("check", "membership, Hermitian and block-identity residuals");
  check->add_option("file", o.file)->required();
  auto* invert = app.add_subcommand("invert", "inverse of a U(p,q) member via J M* J");
  invert->add_option("file", o.file)->required();
  auto* generators = app.add_subcommand("generators", "spectral generators of a U_s(p,q) member");
  generators->add_option("file", o.file)->required();
  auto* decompose = app.add_subcommand("decompose", "2x2 block decomposition (p = q)");
  decompose->add_option("file", o.file)->required();
  auto* invariants =
      app.add_subcommand("invariants", "canonical invariant of a matrix or decompose report");
  invariants->add_option("file", o.file)->required();
  auto* equiv = app.add_subcommand("equiv", "exit 0 iff the two matrices are equivalent");
  equiv->add_option("file1", o.file)->required();
  equiv->add_option("file2", o.file2)->required();
  auto* exp_cmd = app.add_subcommand("exp", "exponential of an offdiag Lie block");
  exp_cmd->add_option("file", o.file)->required();
  auto* log_cmd = app.add_subcommand("log", "logarithm of a positive-definite member");
  log_cmd->add_option("file", o.file)->required();
  auto* sample = app.add_subcommand("sample", "draw a random matrix");
  sample->add_option("--family", o.family)
      ->required()
      ->check(CLI::IsMember({"uspp", "lie", "upq", "haar"}));
  sample->add_option("--p", o.p)->required();
  sample->add_option("--q", o.q)->required();
  sample->add_option("--seed", o.seed)->required();
  sample->add_option("--tmax", o.t_max)->capture_default_str();
  sample->add_option("--scale", o.scale)->capture_default_str();
  auto* dim = app.add_subcommand("dim", "complex dimension p*q of u_s(p,q)");
  dim->add_option("--p", o.p)->required();
  dim->add_option("--q", o.q)->required();

  for (auto* cmd : {check, invert, generators, decompose, invariants, equiv, exp_cmd, log_cmd,
                    sample, dim}) {
    add_tolerance_flags(cmd, o);
  }

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "upq: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*check) return cmd_check(o, in, out);
    if (*invert) return cmd_invert(o, in, out);
    if (*generators) return cmd_generators(o, in, out);
    if (*decompose) return cmd_decompose(o, in, out);
    if (*invariants) return cmd_invariants(o, in, out);
    if (*equiv) return cmd_equiv(o, in, out);
    if (*exp_cmd) return cmd_exp(o, in, out);
    if (*log_cmd) return cmd_log(o, in, out);
    if (*sample) return cmd_sample(o, out);
    if (*dim) return cmd_dim(o, out);
  } catch (const DomainError& e) {
    err << "upq: " << e.what() << '\n';
    return kExitNegative;
  } catch (const InputError& e) {
    err << "upq: " << e.what() << '\n';
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "upq: malformed input: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace upq::cli
