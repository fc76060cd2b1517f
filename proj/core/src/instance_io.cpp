#include "darp/instance_io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace darp {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

double to_double(std::string_view field, int line) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end)
    throw ParseError(ParseErrorKind::NonNumericField, line, "non-numeric field '" + std::string(field) + "'");
  return value;
}

int to_int(std::string_view field, int line) {
  const double value = to_double(field, line);
  if (value != static_cast<double>(static_cast<long long>(value)))
    throw ParseError(ParseErrorKind::NonNumericField, line, "expected an integer, got '" + std::string(field) + "'");
  return static_cast<int>(value);
}

std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), kind_(kind), line_(line) {}

Instance parse_instance(std::string_view text, std::string name) {
  struct Row {
    int line;
    std::vector<std::string_view> fields;
  };
  std::vector<Row> rows;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++line_no;
    auto fields = split_fields(text.substr(pos, eol - pos));
    if (!fields.empty()) rows.push_back({line_no, std::move(fields)});
    pos = eol + 1;
  }

  if (rows.empty()) throw ParseError(ParseErrorKind::MalformedHeader, 1, "empty instance file");
  const Row& header = rows.front();
  if (header.fields.size() != 5)
    throw ParseError(ParseErrorKind::MalformedHeader, header.line,
                     "header must hold 5 fields (m n T Q L), found " + std::to_string(header.fields.size()));

  Instance instance;
  instance.name = std::move(name);
  instance.n_vehicles = to_int(header.fields[0], header.line);
  instance.n_requests = to_int(header.fields[1], header.line);
  instance.max_route_duration = to_double(header.fields[2], header.line);
  instance.vehicle_capacity = to_int(header.fields[3], header.line);
  instance.max_ride_time = to_double(header.fields[4], header.line);
  if (instance.n_vehicles < 1 || instance.n_requests < 0 || instance.vehicle_capacity < 1 ||
      !(instance.max_route_duration > 0.0) || !(instance.max_ride_time > 0.0))
    throw ParseError(ParseErrorKind::MalformedHeader, header.line, "header values out of range");

  const int expected = instance.vertex_count();
  std::vector<Row> body(rows.begin() + 1, rows.end());
  // Trailing copy of the depot (id 2n+1) found in the public distribution.
  if (static_cast<int>(body.size()) == expected + 1 && !body.back().fields.empty()) {
    const Row& last = body.back();
    double id = 0.0;
    auto [ptr, ec] = std::from_chars(last.fields[0].data(), last.fields[0].data() + last.fields[0].size(), id);
    if (ec == std::errc() && id == static_cast<double>(expected)) body.pop_back();
  }
  if (static_cast<int>(body.size()) != expected) {
    const int line = body.empty() ? header.line : body.back().line;
    throw ParseError(ParseErrorKind::WrongVertexCount, line,
                     "expected " + std::to_string(expected) + " vertex lines for " +
                         std::to_string(instance.n_requests) + " requests, found " + std::to_string(body.size()));
  }

  instance.vertices.assign(static_cast<std::size_t>(expected), Vertex{});
  std::vector<char> filled(static_cast<std::size_t>(expected), 0);
  for (const Row& row : body) {
    if (row.fields.size() != 7)
      throw ParseError(ParseErrorKind::BadVertexLine, row.line,
                       "vertex line must hold 7 fields (id x y d q e l), found " + std::to_string(row.fields.size()));
    Vertex v;
    v.id = to_int(row.fields[0], row.line);
    v.x = to_double(row.fields[1], row.line);
    v.y = to_double(row.fields[2], row.line);
    v.service_duration = to_double(row.fields[3], row.line);
    v.load_change = to_int(row.fields[4], row.line);
    v.window_earliest = to_double(row.fields[5], row.line);
    v.window_latest = to_double(row.fields[6], row.line);
    if (v.id < 0 || v.id >= expected)
      throw ParseError(ParseErrorKind::BadVertexLine, row.line, "vertex id " + std::to_string(v.id) + " out of range");
    if (filled[static_cast<std::size_t>(v.id)])
      throw ParseError(ParseErrorKind::DuplicateId, row.line, "duplicate vertex id " + std::to_string(v.id));
    filled[static_cast<std::size_t>(v.id)] = 1;
    instance.vertices[static_cast<std::size_t>(v.id)] = v;
  }

  instance.horizon = instance.vertices.front().window_latest;
  instance.travel = TravelMatrix::euclidean(instance.vertices);
  try {
    instance.check_invariants();
  } catch (const ContractError& e) {
    throw ParseError(ParseErrorKind::InvalidData, header.line, e.what());
  }
  return instance;
}

Instance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str(), path.stem().string());
}

std::string serialize_instance(const Instance& instance) {
  std::string out;
  out += std::to_string(instance.n_vehicles) + ' ' + std::to_string(instance.n_requests) + ' ' +
         format_number(instance.max_route_duration) + ' ' + std::to_string(instance.vehicle_capacity) + ' ' +
         format_number(instance.max_ride_time) + '\n';
  for (const Vertex& v : instance.vertices) {
    out += std::to_string(v.id) + ' ' + format_number(v.x) + ' ' + format_number(v.y) + ' ' +
           format_number(v.service_duration) + ' ' + std::to_string(v.load_change) + ' ' +
           format_number(v.window_earliest) + ' ' + format_number(v.window_latest) + '\n';
  }
  return out;
}

double gap_percent(double cost, double bks) {
  if (!(bks > 0.0)) throw DomainError("best known cost must be positive");
  return (cost - bks) / bks * 100.0;
}

BksRegistry BksRegistry::defaults() {
  BksRegistry registry;
  const std::pair<const char*, double> table[] = {
      {"R1a", 190.02}, {"R2a", 301.34}, {"R3a", 532.00}, {"R4a", 570.25},  {"R5a", 626.93},
      {"R6a", 785.26}, {"R7a", 291.71}, {"R8a", 487.84}, {"R9a", 658.31},  {"R10a", 851.82},
      {"R1b", 164.46}, {"R2b", 295.66}, {"R3b", 484.83}, {"R4b", 529.33},  {"R5b", 577.29},
      {"R6b", 730.69}, {"R7b", 248.21}, {"R8b", 458.73}, {"R9b", 593.49},  {"R10b", 785.68},
  };
  for (const auto& [name, cost] : table) registry.set(name, cost);
  return registry;
}

BksRegistry BksRegistry::parse(std::string_view text) {
  BksRegistry registry;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    ++line_no;
    const auto fields = split_fields(text.substr(pos, eol - pos));
    pos = eol + 1;
    if (fields.empty() || fields[0].front() == '#') continue;
    if (fields.size() != 2)
      throw ParseError(ParseErrorKind::BadVertexLine, line_no, "registry line must be 'name cost'");
    const double cost = to_double(fields[1], line_no);
    if (!(cost > 0.0)) throw ParseError(ParseErrorKind::InvalidData, line_no, "best known cost must be positive");
    if (registry.lookup(std::string(fields[0])))
      throw ParseError(ParseErrorKind::DuplicateId, line_no, "duplicate registry name " + std::string(fields[0]));
    registry.set(std::string(fields[0]), cost);
  }
  return registry;
}

BksRegistry BksRegistry::from_environment() {
  BksRegistry registry = defaults();
  const char* path = std::getenv("DARP_BKS_PATH");
  if (path == nullptr || *path == '\0') return registry;
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string("cannot open registry file ") + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const BksRegistry overrides = parse(buffer.str());
  for (const auto& [name, cost] : overrides.entries()) registry.set(name, cost);
  return registry;
}

void BksRegistry::set(const std::string& name, double cost) {
  if (!(cost > 0.0)) throw DomainError("best known cost must be positive");
  entries_[name] = cost;
}

std::optional<double> BksRegistry::lookup(const std::string& name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace darp
