// lifelogic: run patterns, evaluate expressions as glider circuits, exercise
// the adder, recalibrate gate fixtures and dump PBM frames.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lifelogic/lifelogic.h"

namespace {

enum Exit { kOk = 0, kInput = 2, kSemantic = 3, kCalibration = 4 };

struct UniverseDeleter {
  void operator()(ll_universe* u) const { ll_universe_free(u); }
};
struct CircuitDeleter {
  void operator()(ll_circuit* c) const { ll_circuit_free(c); }
};
using UniversePtr = std::unique_ptr<ll_universe, UniverseDeleter>;
using CircuitPtr = std::unique_ptr<ll_circuit, CircuitDeleter>;

int exit_for(ll_status s) {
  switch (s) {
    case LL_OK: return kOk;
    case LL_ERR_SEMANTIC: return kSemantic;
    case LL_ERR_CALIBRATION: return kCalibration;
    case LL_ERR_INTERNAL: return 1;
    default: return kInput;
  }
}

int report_error(ll_status s) {
  int line = 0, column = 0;
  ll_last_error_position(&line, &column);
  std::cerr << "error: " << ll_last_error();
  if (line > 0 && std::string(ll_last_error()).find("line") == std::string::npos)
    std::cerr << " (line " << line << ", column " << column << ")";
  std::cerr << '\n';
  return exit_for(s);
}

#define LL_TRY(call)                          \
  do {                                        \
    const ll_status st_ = (call);             \
    if (st_ != LL_OK) return report_error(st_); \
  } while (0)

struct Assign {
  std::vector<std::string> names;
  std::vector<int> values;
  std::vector<const char*> name_ptrs() const {
    std::vector<const char*> p;
    for (const auto& n : names) p.push_back(n.c_str());
    return p;
  }
};

std::optional<Assign> parse_assignments(const std::vector<std::string>& items) {
  static const std::regex re(R"(([A-Za-z_][A-Za-z0-9_]*)=([01]))");
  Assign a;
  for (const auto& s : items) {
    std::smatch m;
    if (!std::regex_match(s, m, re)) {
      std::cerr << "error: malformed assignment '" << s << "', expected NAME=0 or NAME=1\n";
      return std::nullopt;
    }
    a.names.push_back(m[1]);
    a.values.push_back(m[2] == "1" ? 1 : 0);
  }
  return a;
}

// ---- run ----------------------------------------------------------------

struct RunOptions {
  std::string pattern;
  std::int64_t generations = 0;
  std::string report = "population";
  std::int64_t every = 1;
  int max_period = 64;
  bool pretty = false;
};

int cmd_run(const RunOptions& o) {
  ll_universe* raw = nullptr;
  LL_TRY(ll_universe_load(o.pattern.c_str(), &raw));
  UniversePtr u(raw);

  if (o.report == "stabilization") {
    int found = 0, period = 0;
    std::int64_t at = 0;
    LL_TRY(ll_universe_stabilization(u.get(), o.generations, o.max_period, &found, &at, &period));
    if (o.pretty) {
      if (found)
        std::cout << "stabilized after " << at << " generations, period " << period << '\n';
      else
        std::cout << "no stabilization within " << o.generations << " generations\n";
    } else if (found) {
      std::cout << "stabilized_at=" << at << "\nperiod=" << period << '\n';
    } else {
      std::cout << "stabilized_at=none\n";
    }
    return kOk;
  }

  if (o.pretty) std::cout << "generation  " << o.report << '\n';
  auto emit = [&]() -> int {
    std::int64_t g = 0;
    ll_universe_generation(u.get(), &g);
    std::ostringstream value;
    if (o.report == "population") {
      std::uint64_t p = 0;
      LL_TRY(ll_universe_population(u.get(), &p));
      value << p;
    } else if (o.report == "bbox") {
      ll_box b{};
      int has = 0;
      LL_TRY(ll_universe_bbox(u.get(), &b, &has));
      if (has)
        value << b.min_x << ',' << b.min_y << ',' << b.max_x << ',' << b.max_y;
      else
        value << "empty";
    } else {
      std::size_t n = 0;
      LL_TRY(ll_universe_gliders(u.get(), nullptr, 0, &n));
      value << n;
    }
    if (o.pretty)
      std::cout << std::setw(10) << g << "  " << value.str() << '\n';
    else
      std::cout << "generation=" << g << ' ' << o.report << '=' << value.str() << '\n';
    return kOk;
  };

  if (int rc = emit()) return rc;
  std::int64_t done = 0;
  while (done < o.generations) {
    const std::int64_t n = std::min(o.every, o.generations - done);
    LL_TRY(ll_universe_step(u.get(), n));
    done += n;
    if (int rc = emit()) return rc;
  }
  return kOk;
}

// ---- eval -----------------------------------------------------------------

struct EvalOptions {
  std::string expression;
  std::vector<std::string> assignments;
  std::string xor_form = "conjunctive";
  bool pretty = false;
};

int cmd_eval(const EvalOptions& o) {
  const auto a = parse_assignments(o.assignments);
  if (!a) return kInput;
  ll_circuit* raw = nullptr;
  const ll_xor_form form = o.xor_form == "disjunctive" ? LL_XOR_DISJUNCTIVE : LL_XOR_CONJUNCTIVE;
  LL_TRY(ll_circuit_compile(o.expression.c_str(), form, &raw));
  CircuitPtr c(raw);
  const auto names = a->name_ptrs();
  int result = 0, guns = 0, window = 0;
  std::int64_t probe = 0;
  LL_TRY(ll_circuit_evaluate(c.get(), names.data(), a->values.data(), names.size(), &result));
  ll_circuit_probe_generation(c.get(), &probe);
  ll_circuit_probe_window(c.get(), &window);
  ll_circuit_gun_count(c.get(), &guns);
  if (o.pretty) {
    std::cout << o.expression << " = " << (result ? "true" : "false") << '\n'
              << "  output sampled at generations " << probe << ".." << probe + window - 1 << '\n'
              << "  guns: " << guns << '\n';
  } else {
    std::cout << "result=" << (result ? "true" : "false") << '\n'
              << "probe_generation=" << probe << '\n'
              << "probe_window=" << window << '\n'
              << "gun_count=" << guns << '\n';
  }
  return kOk;
}

// ---- adder ------------------------------------------------------------------

int cmd_adder(const std::string& x, const std::string& y, bool pretty) {
  static const std::regex re("[01]{2}");
  for (const auto& s : {x, y})
    if (!std::regex_match(s, re)) {
      std::cerr << "error: operand '" << s << "' is not a 2-bit binary string\n";
      return kInput;
    }
  auto value = [](const std::string& s) { return static_cast<unsigned>((s[0] - '0') * 2 + (s[1] - '0')); };
  unsigned sum = 0;
  LL_TRY(ll_adder_add(value(x), value(y), &sum));
  std::string bits;
  for (int i = 2; i >= 0; --i) bits += ((sum >> i) & 1u) ? '1' : '0';
  if (pretty)
    std::cout << x << " + " << y << " = " << bits << '\n';
  else
    std::cout << "sum=" << bits << '\n';
  return kOk;
}

// ---- calibrate -----------------------------------------------------------------

int cmd_calibrate(const std::string& gate, const std::string& out, int width, bool pretty) {
  ll_certificate cert{};
  LL_TRY(ll_gate_calibrate(gate.c_str(), width, out.c_str(), &cert));
  int passed = 0;
  const int arity = cert.rows == 2 ? 1 : 2;
  for (int r = 0; r < cert.rows; ++r) {
    const bool ok = cert.output[r] == cert.expected[r] && cert.clean[r];
    passed += ok ? 1 : 0;
    std::string in;
    for (int i = 0; i < arity; ++i) in += ((cert.inputs[r] >> i) & 1u) ? '1' : '0';
    if (pretty)
      std::cout << "  " << in << "  ->  " << cert.output[r] << (ok ? "  ok" : "  FAIL") << '\n';
    else
      std::cout << "certificate." << in << "=" << cert.output[r] << " expected=" << cert.expected[r]
                << " clean=" << cert.clean[r] << '\n';
  }
  if (pretty)
    std::cout << passed << '/' << cert.rows << " assignments pass, probe generation " << cert.probe_generation
              << '\n';
  else
    std::cout << "passed=" << passed << '/' << cert.rows << '\n' << "probe_generation=" << cert.probe_generation << '\n';
  return passed == cert.rows ? kOk : kCalibration;
}

// ---- render ----------------------------------------------------------------------

struct RenderOptions {
  std::string target;
  std::int64_t generations = 0;
  std::int64_t every = 1;
  std::string out = ".";
  bool circuit = false;
  std::vector<std::string> assignments;
};

int cmd_render(const RenderOptions& o) {
  if (o.every < 1) {
    std::cerr << "error: --every must be at least 1\n";
    return kInput;
  }
  ll_universe* raw = nullptr;
  if (o.circuit) {
    const auto a = parse_assignments(o.assignments);
    if (!a) return kInput;
    ll_circuit* craw = nullptr;
    LL_TRY(ll_circuit_compile(o.target.c_str(), LL_XOR_CONJUNCTIVE, &craw));
    CircuitPtr c(craw);
    const auto names = a->name_ptrs();
    LL_TRY(ll_circuit_prepare(c.get(), names.data(), a->values.data(), names.size(), &raw));
  } else {
    LL_TRY(ll_universe_load(o.target.c_str(), &raw));
  }
  UniversePtr u(raw);

  std::error_code ec;
  std::filesystem::create_directories(o.out, ec);
  if (!std::filesystem::is_directory(o.out)) {
    std::cerr << "error: cannot create output directory '" << o.out << "'\n";
    return kInput;
  }

  struct Frame {
    std::int64_t generation;
    std::vector<std::int32_t> xy;
  };
  std::vector<Frame> frames;
  ll_box region{0, 0, 0, 0};
  bool any = false;
  auto sample = [&]() -> int {
    Frame f;
    ll_universe_generation(u.get(), &f.generation);
    std::size_t n = 0;
    LL_TRY(ll_universe_cells(u.get(), nullptr, 0, &n));
    f.xy.resize(2 * n);
    LL_TRY(ll_universe_cells(u.get(), f.xy.data(), n, &n));
    ll_box b{};
    int has = 0;
    LL_TRY(ll_universe_bbox(u.get(), &b, &has));
    if (has) {
      if (!any) region = b;
      region = {std::min(region.min_x, b.min_x), std::min(region.min_y, b.min_y), std::max(region.max_x, b.max_x),
                std::max(region.max_y, b.max_y)};
      any = true;
    }
    frames.push_back(std::move(f));
    return kOk;
  };
  if (int rc = sample()) return rc;
  for (std::int64_t g = o.every; g <= o.generations; g += o.every) {
    LL_TRY(ll_universe_step(u.get(), o.every));
    if (int rc = sample()) return rc;
  }

  const int digits = std::max<int>(6, static_cast<int>(std::to_string(o.generations).size()));
  const std::int64_t w = static_cast<std::int64_t>(region.max_x) - region.min_x + 1;
  const std::int64_t h = static_cast<std::int64_t>(region.max_y) - region.min_y + 1;
  for (const Frame& f : frames) {
    std::vector<std::string> rows(static_cast<std::size_t>(h), std::string(static_cast<std::size_t>(w), '0'));
    for (std::size_t i = 0; i < f.xy.size(); i += 2)
      rows[static_cast<std::size_t>(f.xy[i + 1] - region.min_y)][static_cast<std::size_t>(f.xy[i] - region.min_x)] = '1';
    std::string gen = std::to_string(f.generation);
    gen.insert(0, static_cast<std::size_t>(std::max<int>(0, digits - static_cast<int>(gen.size()))), '0');
    const auto path = std::filesystem::path(o.out) / ("frame_" + gen + ".pbm");
    std::ofstream out(path, std::ios::binary);
    out << "P1\n# region " << region.min_x << ' ' << region.min_y << ' ' << region.max_x << ' ' << region.max_y
        << " generation " << f.generation << '\n'
        << w << ' ' << h << '\n';
    for (const std::string& row : rows) {
      for (std::size_t i = 0; i < row.size(); i += 70) out << row.substr(i, 70) << '\n';
    }
    if (!out) {
      std::cerr << "error: cannot write " << path.string() << '\n';
      return kInput;
    }
  }
  std::cout << "frames=" << frames.size() << '\n' << "out=" << o.out << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Game of Life logic circuits"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "Human-readable output instead of key=value lines");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Simulate a catalog pattern or RLE file");
  run_cmd->add_option("pattern", run.pattern, "Catalog name or .rle path")->required();
  run_cmd->add_option("generations", run.generations, "Generations to simulate")
      ->required()
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--report", run.report, "Metric to print")
      ->check(CLI::IsMember({"population", "bbox", "gliders", "stabilization"}));
  run_cmd->add_option("--every", run.every, "Reporting interval")->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-period", run.max_period, "Longest oscillation considered by stabilization")
      ->check(CLI::PositiveNumber);
  run_cmd->add_flag("--pretty", pretty);

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Compile an expression and evaluate it by simulation");
  eval_cmd->add_option("expression", eval.expression, "Expression over & | ! ^ and parentheses")->required();
  eval_cmd->add_option("assignments", eval.assignments, "NAME=0|1 values");
  eval_cmd->add_option("--xor-form", eval.xor_form, "XOR expansion")
      ->check(CLI::IsMember({"conjunctive", "disjunctive"}));
  eval_cmd->add_flag("--pretty", pretty);

  std::string ax, ay;
  auto* adder_cmd = app.add_subcommand("adder", "Add two 2-bit numbers on the adder circuit");
  adder_cmd->add_option("x", ax, "First operand, e.g. 11")->required();
  adder_cmd->add_option("y", ay, "Second operand, e.g. 01")->required();
  adder_cmd->add_flag("--pretty", pretty);

  std::string gate, cal_out = ".";
  int width = 4;
  auto* cal_cmd = app.add_subcommand("calibrate", "Search a gate layout and write its fixture");
  cal_cmd->add_option("gate", gate, "AND, OR or NOT")->required();
  cal_cmd->add_option("--out", cal_out, "Directory for <gate>.rle and <gate>.meta");
  cal_cmd->add_option("--search-range", width, "Values searched per geometry parameter");
  cal_cmd->add_flag("--pretty", pretty);

  RenderOptions render;
  auto* render_cmd = app.add_subcommand("render", "Write PBM frames of a pattern or circuit");
  render_cmd->add_option("target", render.target, "Catalog name, .rle path, or expression with --circuit")
      ->required();
  render_cmd->add_option("generations", render.generations, "Last generation")
      ->required()
      ->check(CLI::NonNegativeNumber);
  render_cmd->add_option("--every", render.every, "Frame interval");
  render_cmd->add_option("--out", render.out, "Output directory");
  render_cmd->add_flag("--circuit", render.circuit, "Treat the target as an expression");
  render_cmd->add_option("--set", render.assignments, "NAME=0|1 input values for --circuit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }

  eval.pretty = run.pretty = pretty;
  if (*run_cmd) return cmd_run(run);
  if (*eval_cmd) return cmd_eval(eval);
  if (*adder_cmd) return cmd_adder(ax, ay, pretty);
  if (*cal_cmd) return cmd_calibrate(gate, cal_out, width, pretty);
  return cmd_render(render);
}
