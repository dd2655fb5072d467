#include <fstream>
#include <set>
#include <sstream>

#include "smallpoints/harness.hpp"

namespace smallpoints {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(s.substr(start, i - start));
      start = i + 1;
    }
  return out;
}

BigRational parse_at(const std::string& token, int line) {
  try {
    return parse_rational(token);
  } catch (const InvalidArgument&) {
    throw ParseError(line, "bad rational '" + token + "'");
  }
}

CurvePoint parse_point(const std::string& text, int line) {
  const std::string t = trim(text);
  if (t.size() < 5 || t.front() != '(' || t.back() != ')') throw ParseError(line, "bad point '" + t + "'");
  const auto parts = split(std::string_view(t).substr(1, t.size() - 2), ',');
  if (parts.size() != 2) throw ParseError(line, "point needs two coordinates: '" + t + "'");
  return CurvePoint(parse_at(trim(parts[0]), line), parse_at(trim(parts[1]), line));
}

}  // namespace

std::vector<CurveRecord> parse_curve_text(std::string_view text) {
  std::vector<CurveRecord> out;
  std::set<std::string> labels;
  int line_no = 0;
  for (const std::string& raw : split(text, '\n')) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;

    const auto fields = split(line, '|');
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError(line_no, "expected 'label | a1 a2 a3 a4 a6 | points'");
    CurveRecord rec;
    rec.line = line_no;
    rec.label = trim(fields[0]);
    if (rec.label.empty()) throw ParseError(line_no, "empty label");
    if (!labels.insert(rec.label).second) throw ParseError(line_no, "duplicate label " + rec.label);

    std::istringstream coeffs(fields[1]);
    std::vector<BigRational> a;
    for (std::string tok; coeffs >> tok;) a.push_back(parse_at(tok, line_no));
    if (a.size() != 5)
      throw ParseError(line_no, "expected 5 a-invariants, got " + std::to_string(a.size()));
    rec.model = {a[0], a[1], a[2], a[3], a[4]};
    if (raw_invariants(rec.model).disc == 0) throw ParseError(line_no, "singular model");

    if (fields.size() == 3) {
      for (const std::string& pt : split(fields[2], ';')) {
        if (trim(pt).empty()) continue;
        CurvePoint P = parse_point(pt, line_no);
        if (!on_curve(rec.model, P)) throw OffCurvePoint(rec.label, P.to_string());
        rec.points.push_back(std::move(P));
      }
    }
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<CurveRecord> parse_curve_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_curve_text(ss.str());
}

}  // namespace smallpoints
