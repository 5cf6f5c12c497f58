#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <memory>
#include <ostream>
#include <sstream>

#include "jetlab/certify.hpp"
#include "jetlab/domains.hpp"
#include "jetlab/error.hpp"
#include "jetlab/functions.hpp"
#include "jetlab/glue.hpp"
#include "jetlab/hestenes.hpp"
#include "jetlab/parallel.hpp"
#include "jetlab/spaces.hpp"

namespace jetlab::cli {

void RunConfig::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::InvalidArgument, what);
  };
  need(order >= 0 && order <= kMaxHestenesOrder, "--order must lie in [0, 12]");
  need(h > 0.0 && h <= 1.0, "--h must lie in (0, 1]");
  need(margin >= 0.0, "--margin/--window must be nonnegative");
  need(nMax >= 2, "--n-max must be at least 2");
  need(depth >= 1, "--depth must be positive");
  need(phiDepth >= 1 && phiDepth <= kMaxPhiDepth, "--phi-depth must lie in [1, 40]");
  need(ceiling > 0.0, "--ceiling must be positive");
  need(tol > 0.0, "--tol must be positive");
  need(cFactor > 0.0, "--c-factor must be positive");
  need(band >= 0, "--band must be nonnegative");
  need(neighborhood > 0.0, "--neighborhood must be positive");
  need(on == "q" || on == "omega" || on == "window", "--on must be q, omega or window");
}

namespace {

// Shortest text that parses back to v.
std::string fmt(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string utcNow() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

Provenance RunConfig::provenance() const {
  return {{"tool", "jetlab 0.1.0"},
          {"command", command},
          {"domain", domain},
          {"function", function},
          {"order", std::to_string(order)},
          {"h", fmt(h)},
          {"margin", fmt(margin)},
          {"nMax", std::to_string(nMax)},
          {"depth", std::to_string(depth)},
          {"phiDepth", std::to_string(phiDepth)},
          {"ceiling", fmt(ceiling)},
          {"tol", fmt(tol)},
          {"cFactor", fmt(cFactor)},
          {"band", std::to_string(band)},
          {"neighborhood", fmt(neighborhood)},
          {"space", space},
          {"on", on},
          {"threads", std::to_string(workerCount())},
          {"generated", utcNow()}};
}

namespace {

struct Context {
  RunConfig& cfg;
  std::ostream& out;
  std::ostream& err;
};

void emit(const Context& c, const std::string& payload, const std::string& summary) {
  const std::string doc = withProvenance(payload, c.cfg.provenance());
  if (c.cfg.out.empty()) {
    c.out << prettyJson(doc) << '\n';
  } else {
    writeTextFile(c.cfg.out, doc + "\n");
    c.out << summary << '\n';
  }
}

void emitCsv(const Context& c, const std::string& csv) {
  if (!c.cfg.csv.empty()) writeTextFile(c.cfg.csv, csv);
}

Domain configuredDomain(const RunConfig& cfg) { return buildDomain(parseDomainArg(cfg.domain), cfg.h, cfg.margin); }

SampledJet sampled(const RunConfig& cfg, const Domain& d, const std::string& on) {
  if (cfg.function.empty()) throw Error(ErrorCode::InvalidArgument, "--function is required without --field");
  const AnalyticJet f = namedFunction(cfg.function, cfg.order, d.spec);
  const GridMask mask = on == "q" ? d.q : on == "omega" ? d.omega : GridMask(d.q.grid(), true);
  return sample(f, mask, cfg.order);
}

SampledJet loadedOrSampled(const RunConfig& cfg, const std::string& on) {
  if (!cfg.field.empty()) return jetFromJson(readTextFile(cfg.field));
  return sampled(cfg, configuredDomain(cfg), on);
}

std::string defaultMaskFor(SpaceTag t) {
  switch (t) {
    case SpaceTag::F: return "q";
    case SpaceTag::E: return "omega";
    default: return "window";
  }
}

// ------------------------------------------------------ handlers

int domainBuild(const Context& c) {
  const Domain d = configuredDomain(c.cfg);
  std::ostringstream s;
  s << "domain " << domainName(d.spec.kind) << ": |Q| = " << d.q.count() << ", |Omega| = " << d.omega.count()
    << " on " << d.q.grid().size() << " lattice points";
  emit(c, toJson(d), s.str());
  emitCsv(c, maskCsv(d.q));
  return kOk;
}

int fieldSample(const Context& c) {
  const Domain d = configuredDomain(c.cfg);
  const SampledJet j = sampled(c.cfg, d, c.cfg.on);
  emit(c, toJson(j), "sampled " + c.cfg.function + " on " + std::to_string(j.mask().count()) + " points");
  emitCsv(c, jetCsv(j));
  return kOk;
}

int hestenesCoeffs(const Context& c) {
  const HestenesCoefficients k = solveCoefficients(c.cfg.order);
  std::ostringstream exact, dec;
  for (std::size_t l = 0; l < k.exact.size(); ++l) {
    exact << (l ? " " : "") << k.exact[l].str();
    dec << (l ? " " : "") << fmt(k.values[l]);
  }
  c.out << exact.str() << '\n' << dec.str() << '\n';
  if (!c.cfg.out.empty()) writeTextFile(c.cfg.out, withProvenance(toJson(k), c.cfg.provenance()) + "\n");
  return kOk;
}

int hestenesExtend(const Context& c) {
  if (c.cfg.field.empty()) throw Error(ErrorCode::InvalidArgument, "--field is required");
  const SampledJet u = jetFromJson(readTextFile(c.cfg.field));
  const LatticeExtension e = extendHalfSpace(u, solveCoefficients(c.cfg.order));
  std::ostringstream s;
  s << "extended " << e.extendedPoints << " points, error estimate " << e.errorEstimate;
  emit(c, toJson(e), s.str());
  emitCsv(c, jetCsv(e.jet));
  return kOk;
}

int extendGlobal(const Context& c) {
  if (c.cfg.function.empty()) throw Error(ErrorCode::InvalidArgument, "--function is required");
  const Domain d = configuredDomain(c.cfg);
  const AnalyticJet x = namedFunction(c.cfg.function, c.cfg.order, d.spec);
  const GlobalExtension e = globalExtend(x, d, c.cfg.order, c.cfg.neighborhood);
  std::ostringstream s;
  s << "charts " << e.chartLabels.size() << ", partition residual " << e.partitionResidual << ", interface mismatch "
    << e.interface.maxMismatch << " over " << e.interface.pairs << " pairs";
  emit(c, toJson(e), s.str());
  emitCsv(c, jetCsv(e.xbar));
  return kOk;
}

int spaceNorm(const Context& c) {
  const SpaceTag tag = parseSpaceTag(c.cfg.space);
  const SampledJet j = loadedOrSampled(c.cfg, defaultMaskFor(tag));
  const NormReport r = normOf(tag, j, std::min(c.cfg.order, j.order()));
  emit(c, toJson(r), spaceName(tag) + " norm " + fmt(r.overall));
  emitCsv(c, normCsv(r, j.grid()));
  return kOk;
}

int spaceMember(const Context& c) {
  const SpaceTag tag = parseSpaceTag(c.cfg.space);
  if (tag != SpaceTag::F && tag != SpaceTag::E) throw Error(ErrorCode::InvalidArgument, "membership checks exist for F and E");
  const SampledJet j = loadedOrSampled(c.cfg, defaultMaskFor(tag));
  MembershipOptions o;
  o.tol = c.cfg.tol;
  o.cFactor = c.cfg.cFactor;
  o.band = c.cfg.band;
  const std::string name = c.cfg.field.empty() ? domainName(parseDomainArg(c.cfg.domain).kind) : "field";
  const MembershipVerdict v = checkMembership(j, tag, name, o);
  emit(c, toJson(v), v.consistent() ? "consistent-at-resolution" : "violation: " + v.certificate->note);
  if (v.certificate) emitCsv(c, certificateCsv(*v.certificate));
  return v.consistent() ? kOk : kViolation;
}

int certifyNamed(const Context& c, const std::string& which) {
  Certificate cert;
  if (which == "comb") {
    cert = certifyComb(c.cfg.nMax);
  } else if (which == "gap1d") {
    cert = certifyGap1d(c.cfg.nMax);
  } else {
    cert = certifyCantorSlit(c.cfg.nMax, c.cfg.ceiling, c.cfg.depth, c.cfg.phiDepth);
  }
  std::ostringstream s;
  s << which << ": gap " << cert.gap << (cert.divergent ? ", divergent at n = " + std::to_string(cert.divergenceIndex) : "");
  emit(c, toJson(cert), s.str());
  emitCsv(c, certificateCsv(cert));
  return kOk;
}

int replay(const Context& c) {
  if (c.cfg.cert.empty()) throw Error(ErrorCode::InvalidArgument, "--cert is required");
  const Certificate cert = certificateFromJson(readTextFile(c.cfg.cert));
  const ReplayResult r = replayCertificate(cert, c.cfg.phiDepth);
  std::ostringstream payload;
  // Small enough to hand-format; round-trips through the JSON parser.
  payload << "{\"pass\":" << (r.pass ? "true" : "false") << ",\"firstMismatch\":" << r.firstMismatch
          << ",\"detail\":" << stripProvenance("\"" + r.detail + "\"") << "}";
  emit(c, payload.str(), r.pass ? "replay pass" : "replay FAIL at term " + std::to_string(r.firstMismatch));
  if (!r.pass && c.cfg.out.empty()) c.err << "replay mismatch: " << r.detail << '\n';
  return r.pass ? kOk : kViolation;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"jetlab: extension operators and function-space certificates on lattices", "jetlab"};
  // "--h" is the lattice spacing, so help is long-form only.
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);

  auto addDomain = [&](CLI::App* s) {
    s->add_option("--domain", cfg.domain, "comb[:n] gap1d[:n] cantorslit[:d] halfball[:R] rectangle[:s0,s1,t0,t1] disk[:cx,cy,R]")
        ->capture_default_str();
    s->add_option("--h", cfg.h, "lattice spacing")->capture_default_str();
    s->add_option("--margin", cfg.margin, "window margin for regular domains")->capture_default_str();
  };
  auto addOut = [&](CLI::App* s) {
    s->add_option("--out", cfg.out, "JSON output path (stdout if omitted)");
    s->add_option("--csv", cfg.csv, "CSV output path");
  };

  auto* domain = app.add_subcommand("domain", "domain lattices");
  domain->require_subcommand(1);
  auto* domainBuildCmd = domain->add_subcommand("build", "rasterize Q and Omega");
  addDomain(domainBuildCmd);
  addOut(domainBuildCmd);

  auto* field = app.add_subcommand("field", "sampled jets");
  field->require_subcommand(1);
  auto* fieldSampleCmd = field->add_subcommand("sample", "sample a named function");
  addDomain(fieldSampleCmd);
  fieldSampleCmd->add_option("--function", cfg.function, "function name")->required();
  fieldSampleCmd->add_option("--order", cfg.order, "jet order")->capture_default_str();
  fieldSampleCmd->add_option("--on", cfg.on, "q, omega or window")->capture_default_str();
  addOut(fieldSampleCmd);

  auto* hestenes = app.add_subcommand("hestenes", "reflection across t = 0");
  hestenes->require_subcommand(1);
  auto* coeffsCmd = hestenes->add_subcommand("coeffs", "exact reflection coefficients");
  coeffsCmd->add_option("--order", cfg.order, "reflection order")->required();
  coeffsCmd->add_option("--out", cfg.out, "JSON output path");
  auto* hextendCmd = hestenes->add_subcommand("extend", "reflect a sampled jet");
  hextendCmd->add_option("--field", cfg.field, "input jet JSON")->required();
  hextendCmd->add_option("--order", cfg.order, "reflection order")->capture_default_str();
  addOut(hextendCmd);

  auto* extend = app.add_subcommand("extend", "global extensions");
  extend->require_subcommand(1);
  auto* prop2Cmd = extend->add_subcommand("prop2", "charts plus partition of unity");
  prop2Cmd->add_option("--domain", cfg.domain, "halfball, rectangle or disk spec")->required();
  prop2Cmd->add_option("--function", cfg.function, "function name")->required();
  prop2Cmd->add_option("--order", cfg.order, "extension order (<= 2)")->capture_default_str();
  prop2Cmd->add_option("--window,--margin", cfg.margin, "window margin around Q")->capture_default_str();
  prop2Cmd->add_option("--h", cfg.h, "lattice spacing")->capture_default_str();
  prop2Cmd->add_option("--neighborhood", cfg.neighborhood, "boundary band for the partition residual")
      ->capture_default_str();
  addOut(prop2Cmd);

  auto* space = app.add_subcommand("space", "norms and membership");
  space->require_subcommand(1);
  auto addSource = [&](CLI::App* s) {
    s->add_option("--field", cfg.field, "input jet JSON (instead of --domain/--function)");
    addDomain(s);
    s->add_option("--function", cfg.function, "function name");
    s->add_option("--order", cfg.order, "order")->capture_default_str();
    s->add_option("--space", cfg.space, "F, E or G")->capture_default_str();
  };
  auto* normCmd = space->add_subcommand("norm", "sup-norm report");
  addSource(normCmd);
  addOut(normCmd);
  auto* memberCmd = space->add_subcommand("member", "resolution-qualified membership verdict");
  addSource(memberCmd);
  memberCmd->add_option("--tol", cfg.tol, "modulus tolerance near the boundary")->capture_default_str();
  memberCmd->add_option("--c-factor", cfg.cFactor, "C = factor * max sup")->capture_default_str();
  memberCmd->add_option("--band", cfg.band, "boundary band in lattice steps")->capture_default_str();
  addOut(memberCmd);

  auto* certify = app.add_subcommand("certify", "separation certificates");
  certify->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> certCmds;
  for (const char* name : {"comb", "gap1d", "cantorslit"}) {
    auto* s = certify->add_subcommand(name, std::string("certificate for ") + name);
    s->add_option("--n-max", cfg.nMax, "number of terms")->capture_default_str();
    if (std::string(name) == "cantorslit") {
      s->add_option("--ceiling", cfg.ceiling, "divergence ceiling")->capture_default_str();
      s->add_option("--depth", cfg.depth, "slit depth for the witnesses")->capture_default_str();
      s->add_option("--phi-depth", cfg.phiDepth, "Cantor digit depth")->capture_default_str();
    }
    addOut(s);
    certCmds.emplace_back(name, s);
  }

  auto* replayCmd = app.add_subcommand("replay", "recompute a certificate");
  replayCmd->add_option("--cert", cfg.cert, "certificate JSON")->required();
  replayCmd->add_option("--phi-depth", cfg.phiDepth, "Cantor digit depth")->capture_default_str();
  replayCmd->add_option("--out", cfg.out, "JSON output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help() << '\n';
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All) << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help("", CLI::AppFormatMode::All) << '\n';
    return kUsage;
  }

  std::ostringstream command;
  for (const auto& a : args) command << (command.tellp() > 0 ? " " : "") << a;
  cfg.command = command.str();
  Context ctx{cfg, out, err};
  try {
    cfg.validate();
    if (domainBuildCmd->parsed()) return domainBuild(ctx);
    if (fieldSampleCmd->parsed()) return fieldSample(ctx);
    if (coeffsCmd->parsed()) return hestenesCoeffs(ctx);
    if (hextendCmd->parsed()) return hestenesExtend(ctx);
    if (prop2Cmd->parsed()) return extendGlobal(ctx);
    if (normCmd->parsed()) return spaceNorm(ctx);
    if (memberCmd->parsed()) return spaceMember(ctx);
    for (const auto& [name, s] : certCmds)
      if (s->parsed()) return certifyNamed(ctx, name);
    if (replayCmd->parsed()) return replay(ctx);
  } catch (const Error& e) {
    err << "error [" << toString(e.code()) << "]: " << e.what() << '\n';
    const bool usage = e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::Parse;
    return usage ? kUsage : kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  err << app.help() << '\n';
  return kUsage;
}

}  // namespace jetlab::cli
