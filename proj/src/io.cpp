#include "nhfs/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nhfs/error.hpp"

namespace nhfs::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <class T>
bool parse_number(std::string_view s, T& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

double require_number(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    parse_fail(where + ": missing numeric field \"" + key + "\"");
  }
  return j.at(key).get<double>();
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

ModelFile parse_model(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail(std::string("model JSON: ") + e.what());
  }
  if (!j.is_object()) parse_fail("model JSON: top level must be an object");
  ModelFile file;
  file.period = require_number(j, "P", "model");
  if (!(file.period > 0.0)) parse_fail("model: P must be positive");
  const double constant = j.contains("constant") ? require_number(j, "constant", "model") : 0.0;
  std::vector<CosineTerm> terms;
  if (j.contains("terms")) {
    if (!j.at("terms").is_array()) parse_fail("model: \"terms\" must be an array");
    std::size_t idx = 0;
    for (const auto& t : j.at("terms")) {
      const std::string where = "term " + std::to_string(idx++);
      if (!t.is_object()) parse_fail(where + ": must be an object");
      CosineTerm term;
      const std::string kind = t.value("kind", std::string("trig"));
      if (kind == "trig") {
        term.kind = TermKind::Trig;
      } else if (kind == "hyperbolic") {
        term.kind = TermKind::Hyperbolic;
      } else {
        parse_fail(where + ": unknown kind \"" + kind + "\"");
      }
      term.gamma = require_number(t, "gamma", where);
      term.freq = require_number(t, "freq", where);
      term.phase = t.contains("phase") ? require_number(t, "phase", where) : 0.0;
      if (!(term.gamma > 0.0)) parse_fail(where + ": gamma must be positive");
      if (!(term.freq > 0.0)) parse_fail(where + ": freq must be positive");
      if (!std::isfinite(term.phase)) parse_fail(where + ": phase must be finite");
      terms.push_back(term);
    }
  }
  file.model = canonicalize(std::move(terms), constant);
  return file;
}

nlohmann::json model_to_json(const SignalModel& model, double period) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : model.terms) {
    terms.push_back({{"kind", t.kind == TermKind::Trig ? "trig" : "hyperbolic"},
                     {"gamma", t.gamma},
                     {"freq", t.freq},
                     {"phase", t.phase}});
  }
  return {{"P", period}, {"constant", model.constant}, {"terms", terms}};
}

FourierData parse_coefficients(std::string_view text, double period) {
  FourierData data;
  data.period = period;
  std::set<int> seen;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    const std::string_view line = trim(text.substr(0, eol));
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no);
    if (!header_seen) {
      if (line != "n,re,im") parse_fail(where + ": expected header \"n,re,im\"");
      header_seen = true;
      continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string_view::npos || line.find(',', c2 + 1) != std::string_view::npos) {
      parse_fail(where + ": expected three fields");
    }
    int n = 0;
    double re = 0.0, im = 0.0;
    if (!parse_number(line.substr(0, c1), n) || n < 0) parse_fail(where + ": bad index");
    if (!parse_number(line.substr(c1 + 1, c2 - c1 - 1), re) ||
        !parse_number(line.substr(c2 + 1), im)) {
      parse_fail(where + ": bad number");
    }
    if (!seen.insert(n).second) parse_fail(where + ": index " + std::to_string(n) + " repeated");
    if (n == 0) {
      data.c0 = Complex(re, im);
    } else {
      data.entries.push_back({n, Complex(re, im)});
    }
  }
  if (!header_seen) parse_fail("coefficient CSV is empty");
  return data;
}

std::string coefficients_to_csv(const FourierData& data) {
  std::ostringstream os;
  os << "n,re,im\n";
  if (data.c0) {
    os << "0," << format_double(data.c0->real()) << ',' << format_double(data.c0->imag()) << '\n';
  }
  for (const auto& [n, c] : data.entries) {
    os << n << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
  }
  return os.str();
}

nlohmann::json report_to_json(const ReconstructionReport& report, double period) {
  return {{"model", model_to_json(report.model, period)},
          {"sigma", report.periodic_indices},
          {"iterations", report.aaa.iterations},
          {"selection_order", report.aaa.selection_order},
          {"residual_max", report.residual_max},
          {"froissart_removed", report.froissart_removed},
          {"converged", report.aaa.converged},
          {"warnings", report.warnings}};
}

nlohmann::json comparison_to_json(const ModelComparison& cmp) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : cmp.rows) {
    nlohmann::json row = {{"kind", r.reference.kind == TermKind::Trig ? "trig" : "hyperbolic"},
                          {"freq", r.reference.freq},
                          {"matched", r.estimate.has_value()}};
    if (r.estimate) {
      row["freq_error"] = r.freq_error;
      row["phase_error"] = r.phase_error;
      row["gamma_error"] = r.gamma_error;
    }
    rows.push_back(row);
  }
  return {{"max_freq_error", cmp.max_freq_error},
          {"max_phase_error", cmp.max_phase_error},
          {"max_gamma_error", cmp.max_gamma_error},
          {"constant_error", cmp.constant_error},
          {"term_count_mismatch", cmp.term_count_mismatch},
          {"terms", rows}};
}

std::vector<int> parse_indices(std::string_view spec) {
  std::vector<int> out;
  std::set<int> seen;
  auto add = [&](int n) {
    if (!seen.insert(n).second) parse_fail("index " + std::to_string(n) + " listed twice");
    out.push_back(n);
  };
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view item = trim(spec.substr(0, comma));
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) parse_fail("empty item in index list");
    const auto dots = item.find("..");
    int lo = 0, hi = 0;
    if (dots == std::string_view::npos) {
      if (!parse_number(item, lo) || lo < 0) parse_fail("bad index \"" + std::string(item) + "\"");
      add(lo);
      continue;
    }
    if (!parse_number(item.substr(0, dots), lo) || !parse_number(item.substr(dots + 2), hi) ||
        lo < 0 || hi < lo) {
      parse_fail("bad range \"" + std::string(item) + "\"");
    }
    for (int n = lo; n <= hi; ++n) add(n);
  }
  if (out.empty()) parse_fail("no indices given");
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace nhfs::io
