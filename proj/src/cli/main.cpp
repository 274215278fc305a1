// tilekit command-line entry point
#include "tilekit/dtac.hpp"
#include "tilekit/enumerator.hpp"
#include "tilekit/errors.hpp"
#include "tilekit/identities.hpp"
#include "tilekit/io.hpp"
#include "tilekit/kasteleyn.hpp"
#include "tilekit/kernel_k.hpp"
#include "tilekit/kernel_l.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

using namespace tilekit;

namespace {

constexpr int kOk = 0, kSpecError = 2, kCheckFailed = 3, kInternal = 1;

struct Report {
  json doc;
  std::vector<std::string> failed;

  explicit Report(const std::string& command) {
    doc["schema"] = kReportSchema;
    doc["command"] = command;
  }
  void check(const std::string& name, bool ok) {
    doc["checks"][name] = ok;
    if (!ok) failed.push_back(name);
  }
};

template <class T>
std::vector<T> parse_list(const std::string& s, size_t expect = 0) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T v;
    if (!(is >> v) || !(is >> std::ws).eof()) throw Error(ErrorKind::ConstraintViolation, "cannot parse '" + s + "'");
    out.push_back(v);
  }
  if (expect && out.size() != expect)
    throw Error(ErrorKind::DimensionMismatch, "'" + s + "' needs " + std::to_string(expect) + " values");
  return out;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ConstraintViolation, "cannot write '" + path + "'");
  out << body;
}

std::unique_ptr<RedDotKernel> make_kernel(const BoundaryData& bd, const std::string& which) {
  if (which == "multi_cut" || !bd.two_cut) return std::make_unique<MultiCutKernel>(bd);
  return std::make_unique<TwoCutKernel>(bd);
}

void require_exact(const std::string& backend, const std::string& cmd) {
  if (backend != "exact") throw Error(ErrorKind::ConstraintViolation, cmd + " needs --backend exact");
}

json suite_json(const SuiteResult& s) {
  json j;
  j["name"] = s.name;
  j["cases"] = s.cases;
  j["failures"] = s.failures;
  j["max_residual"] = exact_json(s.max_residual);
  j["pass"] = s.pass();
  if (!s.first_failure.empty()) j["first_failure"] = s.first_failure;
  return j;
}

json dtac_json(const DTacValue& v) {
  json j;
  j["value"] = float_json(v.value);
  json pieces = json::array();
  for (double p : v.pieces) pieces.push_back(float_json(p));
  j["pieces"] = pieces;
  j["error_estimate"] = float_json(v.error_estimate);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tilekit: kernels, oracles and limits for lozenge tilings of cut hexagons"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string spec_path, report_path, out_path, backend = "exact", kernel_impl = "two_cut";
  app.add_option("--report", report_path, "write the JSON report here instead of stdout");

  auto add_spec = [&](CLI::App* sub) { sub->add_option("--spec", spec_path, "geometry JSON")->required(); };
  auto add_backend = [&](CLI::App* sub) {
    sub->add_option("--backend", backend, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  };

  // validate
  CLI::App* validate_cmd = app.add_subcommand("validate", "check a geometry and print derived quantities");
  add_spec(validate_cmd);

  // kernel
  CLI::App* kernel_cmd = app.add_subcommand("kernel", "evaluate the K or L kernel");
  std::string which, at;
  bool grid = false;
  kernel_cmd->add_option("which", which, "k or l")->required()->check(CLI::IsMember({"k", "l"}));
  add_spec(kernel_cmd);
  add_backend(kernel_cmd);
  kernel_cmd->add_option("--at", at, "m,x,n,y for k; eta1,xi1,eta2,xi2 for l");
  kernel_cmd->add_flag("--grid", grid, "all sites of P");
  kernel_cmd->add_option("--out", out_path, "CSV output for --grid");
  kernel_cmd->add_option("--impl", kernel_impl, "two_cut or multi_cut")->check(CLI::IsMember({"two_cut", "multi_cut"}));

  // kasteleyn
  CLI::App* kast_cmd = app.add_subcommand("kasteleyn", "Kasteleyn matrix checks");
  bool verify = false, kcount = false;
  add_spec(kast_cmd);
  add_backend(kast_cmd);
  kast_cmd->add_flag("--verify", verify, "exact inverse against the kernel");
  kast_cmd->add_flag("--count", kcount, "|det K|");
  kast_cmd->add_option("--impl", kernel_impl, "two_cut or multi_cut")->check(CLI::IsMember({"two_cut", "multi_cut"}));

  // count
  CLI::App* count_cmd = app.add_subcommand("count", "number of tilings by the interlacing DP");
  bool cross = false;
  add_spec(count_cmd);
  count_cmd->add_flag("--cross-check", cross, "compare with |det Kasteleyn|");

  // sample
  CLI::App* sample_cmd = app.add_subcommand("sample", "uniform random tiling");
  uint64_t seed = 0;
  std::string svg_path, tiling_out;
  add_spec(sample_cmd);
  sample_cmd->add_option("--seed", seed, "64-bit seed");
  sample_cmd->add_option("--svg", svg_path, "SVG output");
  sample_cmd->add_option("--json", tiling_out, "tiling JSON output");

  // render
  CLI::App* render_cmd = app.add_subcommand("render", "render a tiling JSON as SVG");
  std::string tiling_in;
  add_spec(render_cmd);
  render_cmd->add_option("--tiling", tiling_in, "tiling JSON")->required();
  render_cmd->add_option("--svg", svg_path, "SVG output")->required();

  // dtac
  CLI::App* dtac_cmd = app.add_subcommand("dtac", "limit kernel");
  DTacParams dp;
  QuadratureSpec qs;
  std::string eval, taus = "-2,3", thetas = "-1,1,1";
  dtac_cmd->add_option("--rho", dp.rho)->required();
  dtac_cmd->add_option("--r", dp.r)->required();
  dtac_cmd->add_option("--beta", dp.beta);
  dtac_cmd->add_option("--eval", eval, "tau1,theta1,tau2,theta2");
  dtac_cmd->add_flag("--grid", grid, "grid over --taus x --thetas");
  dtac_cmd->add_option("--taus", taus, "lo,hi");
  dtac_cmd->add_option("--thetas", thetas, "lo,hi,step");
  dtac_cmd->add_option("--out", out_path, "CSV output for --grid");
  auto add_quad = [&](CLI::App* sub) {
    sub->add_option("--eps", qs.eps);
    sub->add_option("--T", qs.T);
    sub->add_option("--n", qs.n);
    sub->add_option("--r0", qs.r0);
    sub->add_option("--n0", qs.n0);
    sub->add_option("--tol", qs.tol);
  };
  add_quad(dtac_cmd);

  // converge
  CLI::App* conv_cmd = app.add_subcommand("converge", "finite kernel against the limit");
  ScalingParams sp;
  std::string dgrid = "8,16,32", points;
  bool check_trend = false;
  conv_cmd->add_option("--gamma", sp.gamma);
  conv_cmd->add_option("--r", sp.r);
  conv_cmd->add_option("--rho", sp.rho);
  conv_cmd->add_option("--beta-bar1", sp.beta_bar1);
  conv_cmd->add_option("--beta-bar2", sp.beta_bar2);
  conv_cmd->add_option("--gamma-bar1", sp.gamma_bar1);
  conv_cmd->add_option("--gamma-bar2", sp.gamma_bar2);
  conv_cmd->add_option("--dgrid", dgrid, "comma list of d");
  conv_cmd->add_option("--points", points, "tau1,theta1,tau2,theta2;...");
  conv_cmd->add_option("--out", out_path, "CSV output");
  conv_cmd->add_flag("--check-trend", check_trend, "fail unless every error decreases with last/first < 0.5");
  add_quad(conv_cmd);

  // identities
  CLI::App* id_cmd = app.add_subcommand("identities", "exact identity suites");
  add_spec(id_cmd);
  add_backend(id_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kSpecError;
  }

  CLI::App* sub = app.get_subcommands().front();
  Report rep(sub->get_name());
  int code = kOk;
  json res = json::object();

  try {
    std::optional<LoadedSpec> spec;
    if (!spec_path.empty()) {
      spec = load_spec_file(spec_path);
      rep.doc["spec"] = spec_json(*spec);
    }

    if (sub == validate_cmd) {
      res = boundary_json(spec->bd);
    } else if (sub == kernel_cmd) {
      const bool exact = backend == "exact";
      const BoundaryData& bd = spec->bd;
      auto k = make_kernel(bd, kernel_impl);
      res["backend"] = backend;
      res["impl"] = bd.two_cut && kernel_impl == "two_cut" ? "two_cut" : "multi_cut";
      if (!at.empty()) {
        const auto v = parse_list<long>(at, 4);
        Rational val;
        if (which == "k") {
          val = (*k)(v[0], v[1], v[2], v[3]);
        } else {
          const LKernel l(*k);
          const BlueDot p{v[0], v[1]}, q{v[2], v[3]};
          if ((p.eta + p.xi) % 2 == 0 || (q.eta + q.xi) % 2 == 0)
            throw Error(ErrorKind::ConstraintViolation, "blue dots need eta + xi odd");
          val = l(p, q);
        }
        res["at"] = v;
        res["value"] = number_json(val, exact);
      } else if (grid) {
        std::ostringstream csv;
        if (which == "k") {
          std::vector<std::pair<long, long>> src, dst;
          for (long m = 0; m <= bd.N; ++m)
            for (long x = bd.row_lo(m); x <= bd.row_hi(); ++x) {
              if (bd.black_in_P(m, x)) src.emplace_back(m, x);
              if (bd.white_in_P(m, x)) dst.emplace_back(m, x);
            }
          write_kernel_csv(csv, *k, src, dst, exact);
          res["rows"] = src.size() * dst.size();
        } else {
          const LKernel l(*k);
          const auto sites = blue_sites(bd);
          write_l_kernel_csv(csv, l, sites, sites, exact);
          res["rows"] = sites.size() * sites.size();
        }
        if (out_path.empty()) res["csv"] = csv.str();
        else write_file(out_path, csv.str()), res["csv_path"] = out_path;
      } else {
        throw Error(ErrorKind::ConstraintViolation, "kernel needs --at or --grid");
      }
    } else if (sub == kast_cmd) {
      if (!verify && !kcount) throw Error(ErrorKind::ConstraintViolation, "kasteleyn needs --verify or --count");
      const BoundaryData& bd = spec->bd;
      const KasteleynSystem sys = build_kasteleyn(bd);
      res["size"] = sys.size();
      if (verify) {
        require_exact(backend, "kasteleyn --verify");
        auto k = make_kernel(bd, kernel_impl);
        const ExactInverse inv = invert_exact(sys);
        const InverseReport cmp = compare_with_inverse(sys, inv, *k);
        const InverseReport id = verify_inverse_identity(sys, *k);
        res["entries_checked"] = cmp.entries_checked;
        res["max_residual"] = exact_json(cmp.max_residual);
        Rational mr = cmp.max_residual;
        mr.canonicalize();
        res["max_residual_num"] = mr.get_num().get_str();
        res["max_residual_den"] = mr.get_den().get_str();
        res["pass"] = cmp.pass && id.pass;
        res["identity_entries"] = id.entries_checked;
        res["identity_max_residual"] = exact_json(id.max_residual);
        rep.check("kasteleyn_inverse", cmp.pass);
        rep.check("kasteleyn_inverse_identity", id.pass);
      }
      if (kcount) {
        Integer det = kasteleyn_determinant(sys);
        if (det < 0) det = -det;
        res["abs_det"] = det.get_str();
      }
    } else if (sub == count_cmd) {
      const TilingEnumerator en(spec->bd);
      res["count"] = en.count().get_str();
      if (cross) {
        Integer det = kasteleyn_count(spec->bd);
        res["abs_det"] = det.get_str();
        rep.check("count_cross_check", det == en.count());
      }
    } else if (sub == sample_cmd) {
      const BoundaryData& bd = spec->bd;
      const TilingEnumerator en(bd);
      if (en.count() == 0) throw Error(ErrorKind::NonTileable, "region has no tilings");
      const TilingConfig t = tiling_from_levels(bd, en.sample(seed));
      res["seed"] = seed;
      res["tiles"] = t.tiles.size();
      res["tiling"] = tiling_json(t);
      if (bd.two_cut) {
        bool ok = true;
        for (long eta = t.strip->first; eta <= t.strip->second; ++eta)
          ok = ok && blue_count_on_line(t, eta) == bd.two_cut->r;
        rep.check("strip_blue_counts", ok);
      }
      if (!svg_path.empty()) write_file(svg_path, render_svg(t));
      if (!tiling_out.empty()) write_file(tiling_out, tiling_json(t).dump(1) + "\n");
    } else if (sub == render_cmd) {
      const TilingConfig t = tiling_from_levels(spec->bd, levels_from_json(read_json_file(tiling_in)));
      write_file(svg_path, render_svg(t));
      res["tiles"] = t.tiles.size();
      res["svg_path"] = svg_path;
    } else if (sub == dtac_cmd) {
      res["params"] = {{"rho", dp.rho}, {"r", dp.r}, {"beta", dp.beta}};
      if (!eval.empty()) {
        const auto v = parse_list<double>(eval, 4);
        res["value"] = dtac_json(dtac_kernel(static_cast<long>(v[0]), v[1], static_cast<long>(v[2]), v[3], dp, qs));
      } else if (grid) {
        const auto tr = parse_list<long>(taus, 2);
        const auto th = parse_list<double>(thetas, 3);
        if (th[2] <= 0) throw Error(ErrorKind::ConstraintViolation, "theta step must be positive");
        const DTacKernel kern(dp, qs);
        std::vector<double> tv;
        for (double x = th[0]; x <= th[1] + 1e-12; x += th[2]) tv.push_back(x);
        std::ostringstream csv;
        csv << "tau1,theta1,tau2,theta2,value,L0,L1,L2,L3,L4,error_estimate\n" << std::setprecision(17);
        long rows = 0;
        for (long t1 = tr[0]; t1 <= tr[1]; ++t1)
          for (double x1 : tv)
            for (long t2 = tr[0]; t2 <= tr[1]; ++t2)
              for (double x2 : tv) {
                const DTacValue dv = kern(t1, x1, t2, x2);
                csv << t1 << ',' << x1 << ',' << t2 << ',' << x2 << ',' << dv.value;
                for (double p : dv.pieces) csv << ',' << p;
                csv << ',' << dv.error_estimate << '\n';
                ++rows;
              }
        res["rows"] = rows;
        if (out_path.empty()) res["csv"] = csv.str();
        else write_file(out_path, csv.str()), res["csv_path"] = out_path;
      } else {
        throw Error(ErrorKind::ConstraintViolation, "dtac needs --eval or --grid");
      }
    } else if (sub == conv_cmd) {
      std::vector<ProbePoint> pts;
      if (points.empty()) {
        pts = default_probe_points();
      } else {
        std::stringstream ss(points);
        std::string item;
        while (std::getline(ss, item, ';')) {
          const auto v = parse_list<double>(item, 4);
          pts.push_back({static_cast<long>(v[0]), v[1], static_cast<long>(v[2]), v[3]});
        }
      }
      const auto rows = converge_study(sp, parse_list<long>(dgrid), pts, qs);
      std::ostringstream csv;
      csv << "d,point,eta1,xi1,eta2,xi2,finite,limit,abs_err\n" << std::setprecision(17);
      json jr = json::array();
      for (const ConvergeRow& r : rows) {
        csv << r.d << ',' << r.point << ',' << r.eta1 << ',' << r.xi1 << ',' << r.eta2 << ',' << r.xi2 << ','
            << r.finite << ',' << r.limit << ',' << r.abs_err << '\n';
        jr.push_back({{"d", r.d}, {"point", r.point}, {"finite", float_json(r.finite)},
                      {"limit", float_json(r.limit)}, {"abs_err", float_json(r.abs_err)}});
      }
      res["rows"] = jr;
      json trend = json::array();
      bool all = true;
      for (const TrendVerdict& t : trend_verdicts(rows)) {
        trend.push_back({{"point", t.point}, {"monotone", t.monotone}, {"ratio", float_json(t.ratio)}});
        all = all && t.pass();
      }
      res["trend"] = trend;
      if (check_trend) rep.check("convergence_trend", all);
      if (!out_path.empty()) write_file(out_path, csv.str()), res["csv_path"] = out_path;
    } else if (sub == id_cmd) {
      require_exact(backend, "identities");
      json suites = json::array();
      for (const SuiteResult& s : run_identities(spec->bd)) {
        suites.push_back(suite_json(s));
        rep.check(s.name, s.pass());
      }
      res["suites"] = suites;
    }
    if (!rep.failed.empty()) {
      code = kCheckFailed;
      for (const auto& f : rep.failed) std::cerr << "check failed: " << f << "\n";
    }
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::ConstraintViolation:
      case ErrorKind::NonTileable:
      case ErrorKind::GammaOutOfRange:
      case ErrorKind::DimensionMismatch:
      case ErrorKind::UnsupportedOrder:
        code = kSpecError;
        break;
      default:
        code = kCheckFailed;
        rep.failed.push_back(error_kind_name(e.kind()));
    }
    rep.doc["error"] = {{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
    std::cerr << e.what() << "\n";
  } catch (const std::exception& e) {
    code = kInternal;
    rep.doc["error"] = {{"kind", "internal"}, {"message", e.what()}};
    std::cerr << e.what() << "\n";
  }

  rep.doc["result"] = res;
  rep.doc["failed"] = rep.failed;
  rep.doc["exit_code"] = code;
  const std::string body = rep.doc.dump(2) + "\n";
  if (report_path.empty()) {
    std::cout << body;
  } else {
    try {
      write_file(report_path, body);
    } catch (const Error& e) {
      std::cerr << e.what() << "\n";
      return kSpecError;
    }
  }
  return code;
}
