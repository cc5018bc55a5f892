#include "scendp/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace scendp {

namespace {

[[noreturn]] void parse_fail(const std::string& name, std::size_t line,
                             const std::string& what) {
  throw std::runtime_error(name + ":" + std::to_string(line) + ": " + what);
}

struct LineReader {
  std::istringstream stream;
  std::string name;
  std::size_t line_no = 0;

  explicit LineReader(const std::string& text, std::string file)
      : stream(text), name(std::move(file)) {}

  // next non-empty, non-comment line split into tokens
  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (std::getline(stream, line)) {
      ++line_no;
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::vector<std::string> tokens;
      std::string tok;
      while (ls >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return tokens;
    }
    return std::nullopt;
  }
};

double to_double(const std::string& tok, const std::string& name,
                 std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(name, line, "expected a number, got '" + tok + "'");
  }
}

long long to_int(const std::string& tok, const std::string& name,
                 std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    parse_fail(name, line, "expected an integer, got '" + tok + "'");
  }
}

RoutingInstance parse_routing(LineReader& in,
                              const std::vector<std::string>& header) {
  if (header.size() != 3) {
    parse_fail(in.name, in.line_no, "routing header must be 'n Q beta|hard'");
  }
  RoutingInstance inst;
  inst.n = static_cast<int>(to_int(header[0], in.name, in.line_no));
  inst.capacity = to_int(header[1], in.name, in.line_no);
  if (header[2] == "hard") {
    inst.hard = true;
  } else {
    inst.hard = false;
    inst.penalty_beta = to_double(header[2], in.name, in.line_no);
  }
  if (inst.n < 1) parse_fail(in.name, in.line_no, "n must be >= 1");
  const int side = inst.n + 2;
  inst.costs.reserve(static_cast<std::size_t>(side) * side);
  for (int row = 0; row < side; ++row) {
    auto tokens = in.next();
    if (!tokens) {
      parse_fail(in.name, in.line_no, "missing cost matrix row " +
                                          std::to_string(row) + " of " +
                                          std::to_string(side));
    }
    if (tokens->size() != static_cast<std::size_t>(side)) {
      parse_fail(in.name, in.line_no,
                 "cost row has " + std::to_string(tokens->size()) +
                     " entries, expected " + std::to_string(side));
    }
    for (const std::string& tok : *tokens) {
      inst.costs.push_back(to_double(tok, in.name, in.line_no));
    }
  }
  try {
    inst.validate();
  } catch (const std::exception& e) {
    parse_fail(in.name, in.line_no, e.what());
  }
  return inst;
}

DsirpInstance parse_dsirp(LineReader& in) {
  DsirpInstance out;
  CustomerSpec& spec = out.spec;
  spec.holding = 1.0;
  spec.stockout_multiplier = 2.0;
  int options = 1;
  bool have_u = false, have_h = false;
  bool holding_set = false;
  // delivery directives are applied after U/H/R are known
  struct DeliveryDirective {
    std::vector<std::string> tokens;
    std::size_t line;
  };
  std::vector<DeliveryDirective> delivery_lines;
  std::optional<std::pair<std::vector<double>, std::size_t>> holding_table;

  while (auto tokens = in.next()) {
    const auto& t = *tokens;
    const std::size_t ln = in.line_no;
    if (t[0] == "U" && t.size() == 2) {
      spec.capacity = static_cast<int>(to_int(t[1], in.name, ln));
      have_u = true;
    } else if (t[0] == "I0" && t.size() == 2) {
      spec.initial_inventory = static_cast<int>(to_int(t[1], in.name, ln));
    } else if (t[0] == "H" && t.size() == 2) {
      spec.horizon = static_cast<int>(to_int(t[1], in.name, ln));
      have_h = true;
    } else if (t[0] == "R" && t.size() == 2) {
      options = static_cast<int>(to_int(t[1], in.name, ln));
    } else if (t[0] == "holding" && t.size() >= 2 && t[1] == "standard") {
      if (t.size() != 4) {
        parse_fail(in.name, ln, "holding standard needs <h> <rho>");
      }
      spec.holding = to_double(t[2], in.name, ln);
      spec.stockout_multiplier = to_double(t[3], in.name, ln);
      out.holding.tabular = false;
      holding_set = true;
    } else if (t[0] == "holding" && t.size() >= 2 && t[1] == "table") {
      std::vector<double> table;
      for (std::size_t k = 2; k < t.size(); ++k) {
        table.push_back(to_double(t[k], in.name, ln));
      }
      holding_table = {std::move(table), ln};
      holding_set = true;
    } else if (t[0] == "delivery") {
      delivery_lines.push_back({t, ln});
    } else {
      parse_fail(in.name, ln, "unknown directive '" + t[0] + "'");
    }
  }
  if (!have_u || !have_h) {
    parse_fail(in.name, in.line_no, "dsirp instance needs U and H");
  }
  if (!holding_set) {
    parse_fail(in.name, in.line_no,
               "dsirp instance needs a holding directive");
  }
  if (holding_table) {
    if (holding_table->first.size() !=
        static_cast<std::size_t>(spec.capacity) + 1) {
      parse_fail(in.name, holding_table->second,
                 "holding table needs U+1 values");
    }
    out.holding.tabular = true;
    out.holding.table = holding_table->first;
  }

  out.delivery = DeliveryCostModel::linear(spec.horizon, options, 0.0, 0.0);
  bool any_delivery = false;
  for (const auto& [t, ln] : delivery_lines) {
    if (t.size() >= 2 && t[1] == "linear") {
      if (t.size() != 4) parse_fail(in.name, ln, "delivery linear needs <fixed> <unit>");
      const double f = to_double(t[2], in.name, ln);
      const double u = to_double(t[3], in.name, ln);
      std::fill(out.delivery.fixed.begin(), out.delivery.fixed.end(), f);
      std::fill(out.delivery.unit.begin(), out.delivery.unit.end(), u);
      any_delivery = true;
    } else if (t.size() >= 2 && t[1] == "option") {
      if (t.size() != 6) {
        parse_fail(in.name, ln, "delivery option needs <t> <r> <fixed> <unit>");
      }
      const int day = static_cast<int>(to_int(t[2], in.name, ln));
      const int r = static_cast<int>(to_int(t[3], in.name, ln));
      if (day < 1 || day > spec.horizon || r < 1 || r > options) {
        parse_fail(in.name, ln, "delivery option indices out of range");
      }
      out.delivery.fixed[(day - 1) * options + (r - 1)] =
          to_double(t[4], in.name, ln);
      out.delivery.unit[(day - 1) * options + (r - 1)] =
          to_double(t[5], in.name, ln);
      any_delivery = true;
    } else if (t.size() >= 2 && t[1] == "table") {
      if (!out.delivery.tabular) {
        out.delivery.tabular = true;
        out.delivery.table_quantities = spec.capacity + 1;
        out.delivery.table.assign(
            static_cast<std::size_t>(spec.horizon) * (spec.capacity + 1), 0.0);
      }
      if (t.size() != static_cast<std::size_t>(spec.capacity) + 4) {
        parse_fail(in.name, ln, "delivery table needs <t> and U+1 values");
      }
      const int day = static_cast<int>(to_int(t[2], in.name, ln));
      if (day < 1 || day > spec.horizon) {
        parse_fail(in.name, ln, "delivery table day out of range");
      }
      for (int q = 0; q <= spec.capacity; ++q) {
        out.delivery.table[(day - 1) * (spec.capacity + 1) + q] =
            to_double(t[3 + q], in.name, ln);
      }
      any_delivery = true;
    } else {
      parse_fail(in.name, ln, "unknown delivery directive");
    }
  }
  if (!any_delivery) {
    parse_fail(in.name, in.line_no, "dsirp instance needs a delivery directive");
  }
  try {
    spec.validate();
    out.delivery.validate(spec);
    out.holding.validate(spec);
  } catch (const std::exception& e) {
    parse_fail(in.name, in.line_no, e.what());
  }
  return out;
}

}  // namespace

ParsedInstance parse_instance_text(const std::string& text,
                                   const std::string& name) {
  LineReader in(text, name);
  auto header = in.next();
  if (!header) parse_fail(name, 1, "empty instance file: missing header");
  if ((*header)[0] == "dsirp") return parse_dsirp(in);
  return parse_routing(in, *header);
}

ParsedInstance parse_instance_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_instance_text(buf.str(), path);
}

void write_routing_instance(const RoutingInstance& instance,
                            std::ostream& out) {
  char buf[64];
  out << instance.n << ' ' << instance.capacity << ' ';
  if (instance.hard) {
    out << "hard\n";
  } else {
    std::snprintf(buf, sizeof(buf), "%.17g", instance.penalty_beta);
    out << buf << '\n';
  }
  const int side = instance.n + 2;
  for (int a = 0; a < side; ++a) {
    for (int b = 0; b < side; ++b) {
      std::snprintf(buf, sizeof(buf), "%.17g", instance.cost(a, b));
      out << buf << (b + 1 == side ? '\n' : ' ');
    }
  }
}

namespace {

constexpr char kMagic[4] = {'S', 'C', 'N', 'B'};
constexpr std::uint16_t kVersion = 1;
constexpr std::uint16_t kDtypeU32 = 1;

void put_u16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
  out.write(b, 2);
}
void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int k = 0; k < 4; ++k) b[k] = static_cast<char>((v >> (8 * k)) & 0xff);
  out.write(b, 4);
}
std::uint16_t get_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}
std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

void write_scenario_binary(const ScenarioBatch& batch, std::ostream& out) {
  out.write(kMagic, 4);
  put_u16(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(batch.rows));
  put_u32(out, static_cast<std::uint32_t>(batch.count));
  put_u16(out, kDtypeU32);
  for (std::uint32_t v : batch.data) put_u32(out, v);
}

ScenarioBatch read_scenario_binary(std::istream& in, const std::string& name) {
  char magic[4] = {};
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw std::runtime_error(name + ": bad scenario file magic");
  }
  const std::uint16_t version = get_u16(in);
  if (version != kVersion) {
    throw std::runtime_error(name + ": unsupported scenario file version " +
                             std::to_string(version));
  }
  ScenarioBatch batch;
  batch.rows = get_u32(in);
  batch.count = get_u32(in);
  const std::uint16_t dtype = get_u16(in);
  if (!in) throw std::runtime_error(name + ": truncated scenario header");
  if (dtype != kDtypeU32) {
    throw std::runtime_error(name + ": unsupported scenario dtype " +
                             std::to_string(dtype));
  }
  batch.data.resize(batch.rows * batch.count);
  for (std::uint32_t& v : batch.data) {
    v = get_u32(in);
    if (!in) throw std::runtime_error(name + ": truncated scenario payload");
  }
  return batch;
}

void write_scenario_csv(const ScenarioBatch& batch, std::ostream& out) {
  out << batch.rows << ',' << batch.count << '\n';
  for (std::size_t row = 0; row < batch.rows; ++row) {
    for (std::size_t w = 0; w < batch.count; ++w) {
      out << batch.data[w * batch.rows + row] << (w + 1 == batch.count ? '\n' : ',');
    }
  }
}

ScenarioBatch read_scenario_csv(std::istream& in, const std::string& name) {
  auto next_fields = [&](std::size_t line) {
    std::string text;
    if (!std::getline(in, text)) {
      throw std::runtime_error(name + ":" + std::to_string(line) +
                               ": unexpected end of file");
    }
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(text);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    return fields;
  };
  const auto header = next_fields(1);
  if (header.size() != 2) {
    throw std::runtime_error(name + ":1: header must be rows,cols");
  }
  ScenarioBatch batch;
  batch.rows = std::stoull(header[0]);
  batch.count = std::stoull(header[1]);
  batch.data.resize(batch.rows * batch.count);
  for (std::size_t row = 0; row < batch.rows; ++row) {
    const auto fields = next_fields(row + 2);
    if (fields.size() != batch.count) {
      throw std::runtime_error(name + ":" + std::to_string(row + 2) +
                               ": expected " + std::to_string(batch.count) +
                               " values");
    }
    for (std::size_t w = 0; w < batch.count; ++w) {
      batch.data[w * batch.rows + row] =
          static_cast<std::uint32_t>(std::stoul(fields[w]));
    }
  }
  return batch;
}

ScenarioBatch read_scenario_file(const std::string& path) {
  if (ends_with(path, ".csv")) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open scenario file: " + path);
    return read_scenario_csv(f, path);
  }
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open scenario file: " + path);
  return read_scenario_binary(f, path);
}

void write_scenario_file(const ScenarioBatch& batch, const std::string& path) {
  if (ends_with(path, ".csv")) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write scenario file: " + path);
    write_scenario_csv(batch, f);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write scenario file: " + path);
  write_scenario_binary(batch, f);
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_report_csv(std::ostream& out, const RunMetadata& meta,
                      const std::vector<ReportRow>& rows) {
  out << "# command=" << meta.command << '\n';
  out << "# seed=" << meta.seed << '\n';
  for (const auto& [key, value] : meta.params) {
    out << "# " << key << '=' << value << '\n';
  }
  out << "experiment,instance,m,rep,metric,value,elapsed_ms,seed\n";
  for (const ReportRow& r : rows) {
    out << r.experiment << ',' << r.instance << ',' << r.m << ',' << r.rep
        << ',' << r.metric << ',' << format_value(r.value) << ','
        << format_value(r.elapsed_ms) << ',' << r.seed << '\n';
  }
}

void write_timing_csv(std::ostream& out, const std::vector<BatchTiming>& rows) {
  out << "batch_index,size,wall_ms,peak_bytes_estimate\n";
  for (const BatchTiming& t : rows) {
    out << t.batch_index << ',' << t.size << ',' << format_value(t.wall_ms)
        << ',' << t.bytes_estimate << '\n';
  }
}

}  // namespace scendp
