#include "qstar/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "qstar/bounds.hpp"
#include "qstar/io.hpp"
#include "qstar/operators.hpp"
#include "qstar/oracle.hpp"

namespace qstar::cli {

using json = nlohmann::ordered_json;
using Ctx = QContext<real_t>;
using Jp = JanowskiParams<real_t>;
using Series = TruncSeries<real_t>;
using Member = NormalizedMember<real_t>;

const char* to_string(Command c) {
  switch (c) {
    case Command::QNum: return "qnum";
    case Command::BoundsTable: return "bounds-table";
    case Command::Check: return "check";
    case Command::Generate: return "generate";
    case Command::FsSweep: return "fs-sweep";
    case Command::LimitCompare: return "limit-compare";
    case Command::Bernardi: return "bernardi";
  }
  return "?";
}

namespace {

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::string, double, long long>;

class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}

  void add(std::vector<Cell> row) { rows_.push_back(std::move(row)); }

  void write(std::ostream& os, Format format) const {
    if (format == Format::Csv) {
      write_row(os, header_);
      for (const auto& row : rows_) {
        std::vector<std::string> text;
        for (const auto& cell : row) text.push_back(cell_text(cell));
        write_row(os, text);
      }
      return;
    }
    json out = json::array();
    for (const auto& row : rows_) {
      json obj = json::object();
      for (std::size_t i = 0; i < header_.size(); ++i) obj[header_[i]] = cell_json(row[i]);
      out.push_back(std::move(obj));
    }
    os << out.dump(2) << '\n';
  }

 private:
  static void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }

  static std::string cell_text(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* d = std::get_if<double>(&c)) return io::format_number(*d);
    return std::to_string(std::get<long long>(c));
  }

  static json cell_json(const Cell& c) {
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    if (const auto* d = std::get_if<double>(&c)) {
      if (!std::isfinite(*d)) return io::format_number(*d);
      return std::stod(io::format_number(*d));  // 15 significant digits
    }
    return std::get<long long>(c);
  }

  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

// ---------------------------------------------------------------------------
// Parameter grid

struct Point {
  int p;
  double q, mu, A, B;
};

std::vector<Point> grid(const RunConfig& c) {
  const std::vector<int> ps = c.fixed_p ? std::vector<int>{c.p} : std::vector<int>{1, 2, 3};
  const std::vector<double> qs =
      c.fixed_q ? std::vector<double>{c.q} : std::vector<double>{0.3, 0.5, 0.7, 0.9, 0.99};
  const std::vector<double> mus = c.fixed_mu ? std::vector<double>{c.mu} : std::vector<double>{0, 1, 2.5};
  const std::vector<std::pair<double, double>> abs =
      c.fixed_AB ? std::vector<std::pair<double, double>>{{c.A, c.B}}
                 : std::vector<std::pair<double, double>>{{1, -1}, {1, 0}, {0.5, -0.5}, {1 - 0.25, -1}};
  std::vector<Point> out;
  for (double q : qs)
    for (int p : ps)
      for (double mu : mus)
        for (const auto& [A, B] : abs) out.push_back({p, q, mu, A, B});
  return out;
}

Point single_point(const RunConfig& c) { return {c.p, c.q, c.mu, c.A, c.B}; }

Ctx make_ctx(const Point& pt, const RunConfig& c) { return Ctx(pt.p, pt.q, pt.mu, c.convention); }

std::vector<Cell> point_cells(const Point& pt, const RunConfig& c) {
  return {static_cast<long long>(pt.p), pt.q, pt.mu, pt.A, pt.B, std::string(qstar::to_string(c.convention))};
}

std::vector<std::string> with_point_header(std::vector<std::string> tail) {
  std::vector<std::string> h{"p", "q", "mu", "A", "B", "convention"};
  h.insert(h.end(), tail.begin(), tail.end());
  return h;
}

std::vector<Member> corpus_members(const Ctx& ctx, const Jp& jp, const RunConfig& c) {
  std::vector<Member> out;
  for (auto& e : generate_corpus(ctx, jp, c.N, c.per_degree, 4, c.seed)) out.push_back(std::move(e.member));
  return out;
}

std::vector<Member> members_from_file(const Ctx& ctx, const RunConfig& c) {
  std::vector<Member> out;
  for (auto& rec : io::load_corpus(*c.input_path)) out.emplace_back(ctx, Series(ctx.p(), std::move(rec.coeffs)));
  return out;
}

std::vector<real_t> lambda_values(const RunConfig& c) {
  const long long count = static_cast<long long>(std::floor((c.lambda_to - c.lambda_from) / c.lambda_step + 1e-9)) + 1;
  std::vector<real_t> out;
  for (long long i = 0; i < count; ++i) out.push_back(c.lambda_from + static_cast<double>(i) * c.lambda_step);
  return out;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_qnum(const RunConfig& c, std::ostream& os) {
  const real_t value = q_number(c.n, c.q);
  if (c.format == Format::Json)
    os << json{{"n", c.n}, {"q", c.q}, {"value", value}}.dump() << '\n';
  else
    os << io::format_number(value) << '\n';
  return kOk;
}

int cmd_bounds_table(const RunConfig& c, std::ostream& os) {
  Table t(with_point_header({"functional", "index", "bound", "observed", "slack"}));
  for (const Point& pt : grid(c)) {
    const Ctx ctx = make_ctx(pt, c);
    const Jp jp(pt.A, pt.B);
    const auto members = corpus_members(ctx, jp, c);
    const auto row = [&](const char* name, long long index, real_t bound, real_t observed) {
      auto cells = point_cells(pt, c);
      cells.insert(cells.end(), {std::string(name), index, bound, observed, bound - observed});
      t.add(std::move(cells));
    };
    for (int n = 1; n <= c.N; ++n) {
      real_t observed = 0;
      for (const auto& f : members) observed = std::max(observed, std::abs(f.a(n)));
      row("coefficient", n, coeff_bound(n, ctx, jp), observed);
    }
    real_t fs = 0, third = 0;
    for (const auto& f : members) {
      fs = std::max(fs, fekete_szego_value(f, complex_t(0)));
      third = std::max(third, third_functional_value(f));
    }
    row("fekete-szego", 0, fekete_szego_bound(complex_t(0), ctx, jp), fs);
    row("third", 3, third_functional_bound(ctx, jp), third);
  }
  t.write(os, c.format);
  return kOk;
}

void verdict_row(Table& t, const char* test, const MembershipVerdict& v) {
  Cell re = std::string(), im = std::string(), index = std::string(), theta = std::string();
  if (const auto* z = std::get_if<std::complex<double>>(&v.witness)) re = z->real(), im = z->imag();
  if (const auto* n = std::get_if<int>(&v.witness)) index = static_cast<long long>(*n);
  if (v.theta) theta = *v.theta;
  t.add({std::string(test), std::string(to_string(v.kind)), v.margin, re, im, index, theta});
}

int cmd_check(const RunConfig& c, std::ostream& os) {
  if (!c.input_path) throw UsageError("check needs --in PATH (series file)");
  Series s = io::load_series(*c.input_path);
  if (c.fixed_p && s.lead() != c.p)
    throw UsageError("series starts at z^" + std::to_string(s.lead()) + " but --p is " + std::to_string(c.p));
  if (s.lead() < 1) throw UsageError("series must start at z^p with p >= 1");
  const Ctx ctx(s.lead(), c.q, c.mu, c.convention);
  const Jp jp(c.A, c.B);
  const Member f(ctx, std::move(s));

  ConvolutionGrid g;
  g.form = c.kernel;
  const MembershipVerdict suff = sufficiency_test(f, jp);
  const MembershipVerdict bound = boundary_sample_test(f, jp, c.r, c.m);
  const MembershipVerdict conv = convolution_test(f, jp, g);

  if (c.format == Format::Json) {
    json j{{"sufficiency", json::parse(io::verdict_to_json(suff))},
           {"boundary", json::parse(io::verdict_to_json(bound))},
           {"convolution", json::parse(io::verdict_to_json(conv))}};
    os << j.dump(2) << '\n';
  } else {
    Table t({"test", "kind", "margin", "witness_re", "witness_im", "witness_index", "theta"});
    verdict_row(t, "sufficiency", suff);
    verdict_row(t, "boundary", bound);
    verdict_row(t, "convolution", conv);
    t.write(os, c.format);
  }
  return is_fail(suff.kind) || is_fail(bound.kind) || is_fail(conv.kind) ? kFailVerdict : kOk;
}

int cmd_generate(const RunConfig& c, std::ostream& os) {
  const Ctx ctx = make_ctx(single_point(c), c);
  const Jp jp(c.A, c.B);
  for (const auto& e : generate_corpus(ctx, jp, c.N, c.per_degree, 4, c.seed)) os << io::corpus_line(e) << '\n';
  return kOk;
}

int cmd_fs_sweep(const RunConfig& c, std::ostream& os) {
  const std::vector<real_t> lambdas = lambda_values(c);
  Table t(with_point_header({"lambda", "bound", "observed", "slack"}));
  const std::vector<Point> points = c.input_path ? std::vector<Point>{single_point(c)} : grid(c);
  for (const Point& pt : points) {
    const Ctx ctx = make_ctx(pt, c);
    const Jp jp(pt.A, pt.B);
    const auto members = c.input_path ? members_from_file(ctx, c) : corpus_members(ctx, jp, c);
    for (real_t lam : lambdas) {
      real_t observed = 0;
      for (const auto& f : members) observed = std::max(observed, fekete_szego_value(f, complex_t(lam)));
      const real_t bound = fekete_szego_bound(complex_t(lam), ctx, jp);
      auto cells = point_cells(pt, c);
      cells.insert(cells.end(), {lam, bound, observed, bound - observed});
      t.add(std::move(cells));
    }
  }
  t.write(os, c.format);
  return kOk;
}

int cmd_limit_compare(const RunConfig& c, std::ostream& os) {
  const double q = 1.0 - c.eps;
  std::optional<Series> user;
  if (c.input_path) user = io::load_series(*c.input_path);
  const std::vector<int> ps = user ? std::vector<int>{user->lead()}
                              : c.fixed_p ? std::vector<int>{c.p}
                                          : std::vector<int>{1, 2, 3};
  const std::vector<double> mus = c.fixed_mu ? std::vector<double>{c.mu} : std::vector<double>{0, 1, 2.5};
  Table t({"p", "mu", "q", "convention", "order", "max_abs_dev", "max_rel_dev"});
  for (int p : ps) {
    for (double mu : mus) {
      const Ctx ctx(p, q, mu, c.convention);
      const Series f = user ? *user : Series::geometric(p, c.N);
      const Series quantum = apply_L(ctx, f);
      const Series classical = ruscheweyh_classical(f, mu);
      real_t abs_dev = 0, rel_dev = 0;
      for (int j = 0; j <= f.order(); ++j) {
        const real_t d = std::abs(quantum[j] - classical[j]);
        abs_dev = std::max(abs_dev, d);
        if (classical[j] != complex_t(0)) rel_dev = std::max(rel_dev, d / std::abs(classical[j]));
      }
      t.add({static_cast<long long>(p), mu, q, std::string(qstar::to_string(c.convention)),
             static_cast<long long>(f.order()), abs_dev, rel_dev});
    }
  }
  t.write(os, c.format);
  return kOk;
}

int cmd_bernardi(const RunConfig& c, std::ostream& os) {
  if (c.input_path) {
    const Series s = io::load_series(*c.input_path);
    const Ctx ctx(s.lead(), c.q, c.mu, c.convention);
    const Series b = bernardi_series(s, BernardiParams<real_t>(c.eta, ctx));
    if (c.format == Format::Json) {
      os << io::series_to_json(b) << '\n';
    } else {
      Table t({"exponent", "re", "im"});
      for (int j = 0; j <= b.order(); ++j)
        t.add({static_cast<long long>(b.lead() + j), b[j].real(), b[j].imag()});
      t.write(os, c.format);
    }
    return kOk;
  }

  Table t(with_point_header({"eta", "functional", "index", "bound", "observed", "slack"}));
  for (const Point& pt : grid(c)) {
    const Ctx ctx = make_ctx(pt, c);
    const Jp jp(pt.A, pt.B);
    const BernardiParams<real_t> bp(c.eta, ctx);
    std::vector<Series> images;
    for (const auto& f : corpus_members(ctx, jp, c)) images.push_back(bernardi_series(f, bp));
    const auto row = [&](const char* name, long long index, real_t bound, real_t observed) {
      auto cells = point_cells(pt, c);
      cells.insert(cells.end(), {c.eta, std::string(name), index, bound, observed, bound - observed});
      t.add(std::move(cells));
    };
    for (int n = 1; n <= c.N; ++n) {
      real_t observed = 0;
      for (const auto& b : images) observed = std::max(observed, std::abs(b[n]));
      row("coefficient", n, bernardi_coeff_bound(n, bp, jp), observed);
    }
    real_t fs = 0;
    for (const auto& b : images) fs = std::max(fs, fekete_szego_value(b, pt.p, complex_t(0)));
    row("fekete-szego", 0, bernardi_fekete_bound(complex_t(0), bp, jp), fs);
  }
  t.write(os, c.format);
  return kOk;
}

// ---------------------------------------------------------------------------
// Validation

void validate(const RunConfig& c) {
  try {
    const Ctx ctx(c.p, c.q, c.mu, c.convention);
    const Jp jp(c.A, c.B);
    if (c.command == Command::Bernardi) BernardiParams<real_t>(c.eta, ctx);
  } catch (const ParameterError& e) {
    throw UsageError(e.what());
  }
  if (c.N < 3) throw UsageError("--N must be at least 3");
  if (!(c.r > 0 && c.r < 1)) throw UsageError("--r must lie in (0, 1)");
  if (c.m < 1) throw UsageError("--m must be positive");
  if (c.n < 0) throw UsageError("--n must be nonnegative");
  if (!(c.eps > 0 && c.eps < 1)) throw UsageError("--eps must lie in (0, 1)");
  if (c.per_degree < 1) throw UsageError("--corpus must be positive");
  if (c.command == Command::Check && !c.input_path) throw UsageError("check needs --in PATH");
}

void parse_lambda_grid(const std::string& text, RunConfig& c) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw UsageError("--lambda-grid expects a:b:step, got '" + text + "'");
    parts.push_back(v);
  }
  if (parts.size() != 3) throw UsageError("--lambda-grid expects a:b:step, got '" + text + "'");
  if (!(parts[2] > 0) || !(parts[1] >= parts[0]))
    throw UsageError("--lambda-grid needs a <= b and step > 0");
  c.lambda_from = parts[0];
  c.lambda_to = parts[1];
  c.lambda_step = parts[2];
}

struct HelpRequested {
  std::string text;
};

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"Numerics for multivalent q-starlike functions of Janowski type", "qstar"};
  app.require_subcommand(1);

  std::string convention = "limit", format = "csv", kernel = "printed", lambda_grid;
  std::string in_path, out_path;
  auto* o_p = app.add_option("--p", c.p, "valence p >= 1");
  auto* o_q = app.add_option("--q", c.q, "q in (0, 1)");
  auto* o_mu = app.add_option("--mu", c.mu, "mu > -1");
  auto* o_A = app.add_option("--A", c.A, "Janowski A");
  auto* o_B = app.add_option("--B", c.B, "Janowski B");
  app.add_option("--eta", c.eta, "Bernardi eta > -p");
  app.add_option("--N", c.N, "truncation order");
  app.add_option("--r", c.r, "sampling radius");
  app.add_option("--m", c.m, "boundary samples");
  app.add_option("--seed", c.seed, "base seed of the corpus");
  app.add_option("--convention", convention, "Lambda convention")->check(CLI::IsMember({"limit", "literal"}));
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--in", in_path, "input file");
  app.add_option("--out", out_path, "output file");
  app.add_option("--n", c.n, "index for qnum");
  app.add_option("--lambda-grid", lambda_grid, "a:b:step for fs-sweep");
  app.add_option("--eps", c.eps, "limit-compare uses q = 1 - eps");
  app.add_option("--corpus", c.per_degree, "corpus members per Schwarz degree");
  app.add_option("--kernel", kernel, "convolution kernel family")->check(CLI::IsMember({"printed", "derived"}));

  const std::map<std::string, Command> commands{
      {"qnum", Command::QNum},         {"bounds-table", Command::BoundsTable},
      {"check", Command::Check},       {"generate", Command::Generate},
      {"fs-sweep", Command::FsSweep},  {"limit-compare", Command::LimitCompare},
      {"bernardi", Command::Bernardi},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, cmd] : commands) subs[name] = app.add_subcommand(name)->fallthrough();
  subs["qnum"]->description("print [n,q]");
  subs["bounds-table"]->description("coefficient, Fekete-Szego and third-coefficient bounds against an oracle corpus");
  subs["check"]->description("sufficiency, boundary and convolution tests on a series file");
  subs["generate"]->description("write an oracle corpus as JSON lines");
  subs["fs-sweep"]->description("Fekete-Szego bound against observed values over a lambda grid");
  subs["limit-compare"]->description("L at q = 1 - eps against the classical Ruscheweyh convolution");
  subs["bernardi"]->description("q-Bernardi transform of a series, or its bound table");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested{app.help()};
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  for (const auto& [name, sub] : subs)
    if (sub->parsed()) c.command = commands.at(name);

  c.convention = convention == "literal" ? LambdaConvention::Literal : LambdaConvention::LimitConsistent;
  c.format = format == "json" ? Format::Json : Format::Csv;
  c.kernel = kernel == "derived" ? KernelForm::Derived : KernelForm::Printed;
  if (!in_path.empty()) c.input_path = in_path;
  if (!out_path.empty()) c.output_path = out_path;
  if (!lambda_grid.empty()) parse_lambda_grid(lambda_grid, c);
  c.fixed_p = o_p->count() > 0;
  c.fixed_q = o_q->count() > 0;
  c.fixed_mu = o_mu->count() > 0;
  c.fixed_AB = o_A->count() > 0 || o_B->count() > 0;
  validate(c);
  return c;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  int status = kOk;
  try {
    switch (config.command) {
      case Command::QNum: status = cmd_qnum(config, buffer); break;
      case Command::BoundsTable: status = cmd_bounds_table(config, buffer); break;
      case Command::Check: status = cmd_check(config, buffer); break;
      case Command::Generate: status = cmd_generate(config, buffer); break;
      case Command::FsSweep: status = cmd_fs_sweep(config, buffer); break;
      case Command::LimitCompare: status = cmd_limit_compare(config, buffer); break;
      case Command::Bernardi: status = cmd_bernardi(config, buffer); break;
    }
  } catch (const EvaluationError& e) {
    const auto w = e.witness();
    err << "qstar: " << e.what() << " at z = " << io::format_number(w.real()) << (w.imag() < 0 ? "" : "+")
        << io::format_number(w.imag()) << "i\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "qstar: " << e.what() << '\n';
    return kInputError;
  }

  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::binary);
    file << buffer.str();
    if (!file) {
      err << "qstar: cannot write " << config.output_path->string() << '\n';
      return kInputError;
    }
  } else {
    out << buffer.str();
  }
  return status;
}

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.text;
    return kOk;
  } catch (const UsageError& e) {
    err << "qstar: " << e.what() << '\n';
    return kInputError;
  }
  return run(config, out, err);
}

}  // namespace qstar::cli
