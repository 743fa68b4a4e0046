#include "riopt/trace.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace riopt {

const char* to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::GradTol: return "grad-tol";
    case TerminationReason::MaxIters: return "max-iters";
    case TerminationReason::WallClock: return "wall-clock";
    case TerminationReason::SingularityError: return "singularity-error";
  }
  return "?";
}

std::string format_double(Scalar v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

long IterTrace::iterations() const {
  // Rows are the visited iterates 0..K; the terminal row takes no step, so
  // its index equals the number of steps taken.
  return rows.empty() ? 0 : rows.back().k;
}

std::string IterTrace::to_csv() const {
  std::string out = "k,t,f,gradnorm,errbound,evals,wall_s\n";
  for (const IterRecord& r : rows) {
    out += std::to_string(r.k);
    out += ',';
    out += format_double(r.t);
    out += ',';
    out += format_double(r.f);
    out += ',';
    out += format_double(r.gradnorm);
    out += ',';
    out += format_double(r.errbound);
    out += ',';
    out += std::to_string(r.evals);
    out += ',';
    out += format_double(r.wall_s);
    out += '\n';
  }
  return out;
}

void IterTrace::write_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write trace to " + path);
  out << to_csv();
  if (!out) throw IoError("write failed for " + path);
}

namespace {

Scalar parse_double_field(const std::string& s, const std::string& origin, size_t line) {
  char* end = nullptr;
  const Scalar v = std::strtod(s.c_str(), &end);
  if (end == s.c_str())
    throw ParseError(origin + ": bad numeric field '" + s + "' on line " + std::to_string(line));
  return v;
}

}  // namespace

IterTrace IterTrace::from_csv_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(origin + ": empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "k,t,f,gradnorm,errbound,evals,wall_s")
    throw ParseError(origin + ": unexpected trace header '" + line + "'");

  IterTrace trace;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string field;
    std::vector<std::string> cols;
    while (std::getline(fields, field, ',')) cols.push_back(field);
    if (cols.size() != 7)
      throw ParseError(origin + ": expected 7 columns on line " + std::to_string(lineno));
    IterRecord r;
    r.k = std::stol(cols[0]);
    r.t = parse_double_field(cols[1], origin, lineno);
    r.f = parse_double_field(cols[2], origin, lineno);
    r.gradnorm = parse_double_field(cols[3], origin, lineno);
    r.errbound = parse_double_field(cols[4], origin, lineno);
    r.evals = std::stol(cols[5]);
    r.wall_s = parse_double_field(cols[6], origin, lineno);
    trace.rows.push_back(r);
  }
  return trace;
}

IterTrace IterTrace::read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open trace " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_csv_text(buf.str(), path);
}

}  // namespace riopt
