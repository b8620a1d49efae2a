#include "sst/errors.hpp"
#include "sst/harness.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace sst {
namespace {

constexpr std::string_view kResultsHeader =
    "scheme,sst,k,metadata_bits,m_requested,m_actual,load_factor,q_multiplier,query_mode,seed,runs,"
    "build_time_s,lookup_time_us_per_query,total_time_s,mean_probes,p95_probes,p99_probes,"
    "collisions_per_record,max_cluster";

constexpr std::string_view kSpeedupHeader =
    "scheme,k,metadata_bits,m_requested,load_factor,q_multiplier,query_mode,seed,lookup_speedup,"
    "total_speedup,probe_speedup,p99_probe_speedup";

std::string real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

class FieldReader {
public:
  FieldReader(std::vector<std::string_view> fields, std::size_t line)
      : fields_(std::move(fields)), line_(line) {}

  std::string_view text() { return fields_.at(next_++); }

  template <class T> T number() {
    const std::string_view f = text();
    T value{};
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc{} || ptr != f.data() + f.size())
      fail(f);
    return value;
  }

  double real_value() {
    const std::string_view f = text();
    if (f == "nan")
      return std::numeric_limits<double>::quiet_NaN();
    double value{};
    const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
    if (ec != std::errc{} || ptr != f.data() + f.size())
      fail(f);
    return value;
  }

  [[noreturn]] void fail(std::string_view field) const {
    throw ParseError("line " + std::to_string(line_) + ": bad field '" + std::string(field) + "'");
  }

private:
  std::vector<std::string_view> fields_;
  std::size_t next_ = 0;
  std::size_t line_;
};

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream &out, const std::string &path) {
  out.flush();
  if (!out)
    throw IoError("write to '" + path + "' failed");
}

} // namespace

std::string_view results_csv_header() noexcept { return kResultsHeader; }

void write_results_csv(std::ostream &out, std::span<const RunResult> rows) {
  out << kResultsHeader << '\n';
  for (const RunResult &r : rows) {
    out << to_string(r.scheme) << ',' << (r.sst ? "on" : "off") << ',' << r.k << ','
        << r.metadata_bits << ',' << r.m_requested << ',' << r.m_actual << ','
        << real(r.load_factor) << ',' << r.q_multiplier << ',' << to_string(r.mode) << ','
        << r.seed << ',' << r.runs << ',' << real(r.build_time_s) << ','
        << real(r.lookup_time_us_per_query) << ',' << real(r.total_time_s) << ','
        << real(r.mean_probes) << ',' << real(r.p95_probes) << ',' << real(r.p99_probes) << ','
        << real(r.collisions_per_record) << ',' << real(r.max_cluster) << '\n';
  }
}

void write_results_csv(const std::string &path, std::span<const RunResult> rows) {
  std::ofstream out = open_out(path);
  write_results_csv(out, rows);
  finish(out, path);
}

std::vector<RunResult> read_results_csv(std::istream &in) {
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("missing header line");
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != kResultsHeader)
    throw ParseError("unexpected header: " + line);

  std::vector<RunResult> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    auto fields = split(line);
    if (fields.size() != 19)
      throw ParseError("line " + std::to_string(lineno) + ": expected 19 fields, got " +
                       std::to_string(fields.size()));
    FieldReader f(std::move(fields), lineno);
    RunResult r;
    const std::string_view scheme = f.text();
    const auto parsed_scheme = parse_scheme(scheme);
    if (!parsed_scheme)
      f.fail(scheme);
    r.scheme = *parsed_scheme;
    const std::string_view sst = f.text();
    if (sst != "on" && sst != "off")
      f.fail(sst);
    r.sst = sst == "on";
    r.k = f.number<std::uint32_t>();
    r.metadata_bits = f.number<std::uint32_t>();
    r.m_requested = f.number<std::uint64_t>();
    r.m_actual = f.number<std::uint64_t>();
    r.load_factor = f.real_value();
    r.q_multiplier = f.number<std::uint32_t>();
    const std::string_view mode = f.text();
    const auto parsed_mode = parse_query_mode(mode);
    if (!parsed_mode)
      f.fail(mode);
    r.mode = *parsed_mode;
    r.seed = f.number<std::uint64_t>();
    r.runs = f.number<std::uint32_t>();
    r.build_time_s = f.real_value();
    r.lookup_time_us_per_query = f.real_value();
    r.total_time_s = f.real_value();
    r.mean_probes = f.real_value();
    r.p95_probes = f.real_value();
    r.p99_probes = f.real_value();
    r.collisions_per_record = f.real_value();
    r.max_cluster = f.real_value();
    rows.push_back(r);
  }
  return rows;
}

std::vector<RunResult> read_results_csv(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "' for reading");
  return read_results_csv(in);
}

void write_speedups_csv(std::ostream &out, std::span<const SpeedupRow> rows) {
  out << kSpeedupHeader << '\n';
  for (const SpeedupRow &row : rows) {
    const RunResult &r = row.shaped;
    out << to_string(r.scheme) << ',' << r.k << ',' << r.metadata_bits << ',' << r.m_requested
        << ',' << real(r.load_factor) << ',' << r.q_multiplier << ',' << to_string(r.mode) << ','
        << r.seed << ',' << real(row.lookup_speedup) << ',' << real(row.total_speedup) << ','
        << real(row.probe_speedup) << ',' << real(row.p99_probe_speedup) << '\n';
  }
}

void write_speedups_csv(const std::string &path, std::span<const SpeedupRow> rows) {
  std::ofstream out = open_out(path);
  write_speedups_csv(out, rows);
  finish(out, path);
}

} // namespace sst
