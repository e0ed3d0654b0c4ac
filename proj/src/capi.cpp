#include "lifelogic/lifelogic.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "lifelogic/circuits.hpp"

using namespace lifelogic;

struct ll_universe {
  Universe u;
};

struct ll_circuit {
  Circuit c;
  std::vector<std::string> variables;
};

namespace {

thread_local std::string last_error;
thread_local int last_line = 0;
thread_local int last_column = 0;

ll_status fail(ll_status s, const std::string& msg, int line = 0, int column = 0) {
  last_error = msg;
  last_line = line;
  last_column = column;
  return s;
}

// Maps library exceptions to status codes.
template <typename F>
ll_status guarded(F&& f) {
  try {
    return f();
  } catch (const RleError& e) {
    return fail(LL_ERR_PARSE, e.what(), e.line(), e.column());
  } catch (const ExprParseError& e) {
    return fail(LL_ERR_PARSE, e.what(), 1, static_cast<int>(e.position()));
  } catch (const UnknownPatternError& e) {
    return fail(LL_ERR_PARSE, e.what());
  } catch (const MissingVariableError& e) {
    return fail(LL_ERR_SEMANTIC, e.what());
  } catch (const CompileError& e) {
    return fail(LL_ERR_SEMANTIC, e.what());
  } catch (const CalibrationError& e) {
    return fail(LL_ERR_CALIBRATION, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(LL_ERR_IO, e.what());
  } catch (const std::out_of_range& e) {
    return fail(LL_ERR_ARGUMENT, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(LL_ERR_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(LL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(LL_ERR_INTERNAL, "unknown error");
  }
}

ll_status null_arg() { return fail(LL_ERR_ARGUMENT, "null argument"); }

template <typename T>
void copy_out(const std::vector<T>& src, T* dst, std::size_t capacity, std::size_t* count) {
  *count = src.size();
  if (dst) std::copy_n(src.begin(), std::min(capacity, src.size()), dst);
}

Assignment make_assignment(const char* const* names, const int* values, std::size_t n) {
  Assignment a;
  for (std::size_t i = 0; i < n; ++i) {
    if (!names || !names[i] || !values) throw std::invalid_argument("null assignment entry");
    a[names[i]] = values[i] != 0;
  }
  return a;
}

}  // namespace

extern "C" {

const char* ll_last_error(void) { return last_error.c_str(); }

void ll_last_error_position(int* line, int* column) {
  if (line) *line = last_line;
  if (column) *column = last_column;
}

ll_status ll_universe_new(ll_universe** out) {
  if (!out) return null_arg();
  return guarded([&] {
    *out = new ll_universe{};
    return LL_OK;
  });
}

ll_status ll_universe_load(const char* name_or_path, ll_universe** out) {
  if (!name_or_path || !out) return null_arg();
  return guarded([&] {
    const std::string s = name_or_path;
    const auto& names = catalog_names();
    Pattern p;
    if (std::find(names.begin(), names.end(), s) != names.end()) {
      p = catalog(s);
    } else if (std::filesystem::is_regular_file(s)) {
      p = read_rle_file(s);
    } else {
      return fail(LL_ERR_PARSE, "no catalog pattern or file named '" + s + "'");
    }
    *out = new ll_universe{p.to_universe()};
    return LL_OK;
  });
}

ll_status ll_universe_from_rle(const char* text, ll_universe** out) {
  if (!text || !out) return null_arg();
  return guarded([&] {
    *out = new ll_universe{parse_rle(text).to_universe()};
    return LL_OK;
  });
}

void ll_universe_free(ll_universe* u) { delete u; }

ll_status ll_universe_set(ll_universe* u, int32_t x, int32_t y, int alive) {
  if (!u) return null_arg();
  return guarded([&] {
    u->u.set({x, y}, alive != 0);
    return LL_OK;
  });
}

ll_status ll_universe_alive(const ll_universe* u, int32_t x, int32_t y, int* alive) {
  if (!u || !alive) return null_arg();
  *alive = u->u.alive({x, y}) ? 1 : 0;
  return LL_OK;
}

ll_status ll_universe_step(ll_universe* u, int64_t generations) {
  if (!u) return null_arg();
  if (generations < 0) return fail(LL_ERR_ARGUMENT, "generations must be >= 0");
  return guarded([&] {
    u->u.advance(generations);
    return LL_OK;
  });
}

ll_status ll_universe_generation(const ll_universe* u, int64_t* generation) {
  if (!u || !generation) return null_arg();
  *generation = u->u.generation();
  return LL_OK;
}

ll_status ll_universe_population(const ll_universe* u, uint64_t* population) {
  if (!u || !population) return null_arg();
  *population = u->u.population();
  return LL_OK;
}

ll_status ll_universe_bbox(const ll_universe* u, ll_box* box, int* has_cells) {
  if (!u || !box || !has_cells) return null_arg();
  const auto b = u->u.bounding_box();
  *has_cells = b ? 1 : 0;
  if (b) *box = {b->min.x, b->min.y, b->max.x, b->max.y};
  return LL_OK;
}

ll_status ll_universe_cells(const ll_universe* u, int32_t* xy, size_t capacity, size_t* count) {
  if (!u || !count) return null_arg();
  return guarded([&] {
    const auto cells = u->u.cells();
    *count = cells.size();
    if (xy)
      for (std::size_t i = 0; i < std::min(capacity, cells.size()); ++i) {
        xy[2 * i] = cells[i].x;
        xy[2 * i + 1] = cells[i].y;
      }
    return LL_OK;
  });
}

ll_status ll_universe_gliders(const ll_universe* u, ll_glider* out, size_t capacity, size_t* count) {
  if (!u || !count) return null_arg();
  return guarded([&] {
    std::vector<ll_glider> gs;
    for (const GliderMatch& g : find_gliders(u->u))
      gs.push_back({g.position.x, g.position.y, g.phase, static_cast<int>(g.heading)});
    copy_out(gs, out, capacity, count);
    return LL_OK;
  });
}

ll_status ll_universe_to_rle(const ll_universe* u, char* buf, size_t capacity, size_t* size) {
  if (!u || !size) return null_arg();
  return guarded([&] {
    const std::string s = emit_rle(make_pattern("", u->u.cells()));
    *size = s.size() + 1;
    if (buf && capacity > 0) {
      const std::size_t n = std::min(capacity - 1, s.size());
      std::memcpy(buf, s.data(), n);
      buf[n] = '\0';
    }
    return LL_OK;
  });
}

ll_status ll_universe_stabilization(const ll_universe* u, int64_t max_generations, int max_period, int* found,
                                    int64_t* stabilized_at, int* period) {
  if (!u || !found || !stabilized_at || !period) return null_arg();
  if (max_generations < 0 || max_period < 1) return fail(LL_ERR_ARGUMENT, "invalid stabilization bounds");
  return guarded([&] {
    const auto s = detect_stabilization(u->u, max_generations, max_period);
    *found = s ? 1 : 0;
    if (s) {
      *stabilized_at = s->stabilized_at;
      *period = s->period;
    }
    return LL_OK;
  });
}

ll_status ll_circuit_compile(const char* expression, ll_xor_form form, ll_circuit** out) {
  if (!expression || !out) return null_arg();
  return guarded([&] {
    const ExprPtr e = parse_expression(expression);
    const XorForm f = form == LL_XOR_DISJUNCTIVE ? XorForm::Disjunctive : XorForm::ConjunctiveNegated;
    *out = new ll_circuit{compile(e, f), variables(e)};
    return LL_OK;
  });
}

void ll_circuit_free(ll_circuit* c) { delete c; }

ll_status ll_circuit_variable_count(const ll_circuit* c, size_t* count) {
  if (!c || !count) return null_arg();
  *count = c->variables.size();
  return LL_OK;
}

ll_status ll_circuit_variable(const ll_circuit* c, size_t index, const char** name) {
  if (!c || !name) return null_arg();
  if (index >= c->variables.size()) return fail(LL_ERR_ARGUMENT, "variable index out of range");
  *name = c->variables[index].c_str();
  return LL_OK;
}

ll_status ll_circuit_probe_generation(const ll_circuit* c, int64_t* generation) {
  if (!c || !generation) return null_arg();
  *generation = c->c.probe_generation;
  return LL_OK;
}

ll_status ll_circuit_probe_window(const ll_circuit* c, int* window) {
  if (!c || !window) return null_arg();
  *window = c->c.probe_window;
  return LL_OK;
}

ll_status ll_circuit_gun_count(const ll_circuit* c, int* guns) {
  if (!c || !guns) return null_arg();
  *guns = c->c.gun_count;
  return LL_OK;
}

ll_status ll_circuit_output_cell(const ll_circuit* c, int32_t* x, int32_t* y) {
  if (!c || !x || !y) return null_arg();
  *x = c->c.output_cell().x;
  *y = c->c.output_cell().y;
  return LL_OK;
}

ll_status ll_circuit_evaluate(const ll_circuit* c, const char* const* names, const int* values, size_t n,
                              int* result) {
  if (!c || !result) return null_arg();
  return guarded([&] {
    *result = evaluate(c->c, make_assignment(names, values, n)) ? 1 : 0;
    return LL_OK;
  });
}

ll_status ll_circuit_prepare(const ll_circuit* c, const char* const* names, const int* values, size_t n,
                             ll_universe** out) {
  if (!c || !out) return null_arg();
  return guarded([&] {
    *out = new ll_universe{prepare(c->c, make_assignment(names, values, n))};
    return LL_OK;
  });
}

ll_status ll_adder_add(unsigned x, unsigned y, unsigned* sum) {
  if (!sum) return null_arg();
  if (x > 3 || y > 3) return fail(LL_ERR_PARSE, "adder operands must be 2-bit");
  return guarded([&] {
    *sum = add(build_adder(), x, y);
    return LL_OK;
  });
}

ll_status ll_gate_calibrate(const char* gate, int width, const char* out_dir, ll_certificate* cert) {
  if (!gate || !out_dir || !cert) return null_arg();
  std::string name = gate;
  for (char& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  const auto kind = gate_kind_from_name(name);
  if (!kind) return fail(LL_ERR_PARSE, "unknown gate '" + std::string(gate) + "'");
  if (width < 0) return fail(LL_ERR_ARGUMENT, "search width must be >= 0");
  return guarded([&] {
    const GateTemplate t = calibrate(*kind, default_search(*kind, width));
    *cert = ll_certificate{};
    cert->rows = static_cast<int>(t.certificate.size());
    cert->probe_generation = t.probe_generation;
    for (std::size_t r = 0; r < t.certificate.size() && r < 4; ++r) {
      const CertificateRow& row = t.certificate[r];
      unsigned bits = 0;
      for (std::size_t i = 0; i < row.inputs.size(); ++i)
        if (row.inputs[i]) bits |= 1u << i;
      cert->inputs[r] = bits;
      cert->output[r] = row.output ? 1 : 0;
      cert->expected[r] = gate_truth(*kind, row.inputs) ? 1 : 0;
      cert->clean[r] = row.clean ? 1 : 0;
    }
    save_gate_fixture(t, out_dir);
    return LL_OK;
  });
}

}  // extern "C"
