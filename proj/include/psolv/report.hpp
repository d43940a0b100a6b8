#ifndef PSOLV_REPORT_HPP
#define PSOLV_REPORT_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "verdict.hpp"

namespace psolv
{

inline constexpr char const *report_schema = "psolv-report/1";
inline constexpr char const *tool_version = "0.1.0";

struct Report
{
  std::string tool_version = psolv::tool_version;
  std::string group_id;
  std::string statement_id;
  Verdict verdict;
  std::optional<double> timing_ms;

  friend bool operator==(Report const &, Report const &) = default;
};

enum class ReportFormat { text, structured };

inline bool any_finding(std::vector<Report> const &rs)
{
  for (auto const &r : rs)
    if (r.verdict.is_finding())
      return true;
  return false;
}

namespace detail
{

inline nlohmann::json to_json(Report const &r)
{
  auto const &v = r.verdict;
  nlohmann::json j;
  j["tool_version"] = r.tool_version;
  j["group"] = r.group_id;
  j["statement"] = r.statement_id;
  j["verdict_statement"] = v.statement;
  j["hypothesis_holds"] = v.hypothesis_holds;
  j["conclusion_holds"] = v.conclusion_holds ? nlohmann::json(*v.conclusion_holds) : nlohmann::json();
  j["report_only"] = v.report_only;
  j["finding"] = v.is_finding();
  j["parameters"] = nlohmann::json::object();
  for (auto const &[k, x] : v.parameters)
    j["parameters"][k] = x;
  j["witnesses"] = nlohmann::json::array();
  for (auto const &w : v.witnesses)
    j["witnesses"].push_back({{"description", w.description}, {"value", w.value}});
  j["notes"] = v.notes;
  if (r.timing_ms)
    j["timing_ms"] = *r.timing_ms;
  return j;
}

inline Report from_json(nlohmann::json const &j)
{
  Report r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.group_id = j.at("group").get<std::string>();
  r.statement_id = j.at("statement").get<std::string>();
  auto &v = r.verdict;
  v.statement = j.at("verdict_statement").get<std::string>();
  v.hypothesis_holds = j.at("hypothesis_holds").get<bool>();
  if (!j.at("conclusion_holds").is_null())
    v.conclusion_holds = j.at("conclusion_holds").get<bool>();
  v.report_only = j.at("report_only").get<bool>();
  for (auto const &[k, x] : j.at("parameters").items())
    v.parameters[k] = x.get<long long>();
  for (auto const &w : j.at("witnesses"))
    v.witnesses.push_back({w.at("description").get<std::string>(), w.at("value").get<std::string>()});
  v.notes = j.at("notes").get<std::string>();
  if (j.contains("timing_ms"))
    r.timing_ms = j.at("timing_ms").get<double>();
  return r;
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

} // namespace detail

inline std::string emit_report(std::vector<Report> const &reports, ReportFormat fmt)
{
  long long findings = 0;
  for (auto const &r : reports)
    findings += r.verdict.is_finding();

  if (fmt == ReportFormat::structured) {
    nlohmann::json doc;
    doc["schema"] = report_schema;
    doc["reports"] = nlohmann::json::array();
    for (auto const &r : reports)
      doc["reports"].push_back(detail::to_json(r));
    doc["summary"] = {{"verdicts", reports.size()}, {"findings", findings}};
    return doc.dump(2) + "\n";
  }

  std::string out = std::string(report_schema) + " (psolv " + tool_version + ")\n";
  for (auto const &r : reports) {
    auto const &v = r.verdict;
    out += "[" + r.group_id + "] " + r.statement_id + ": hypothesis " +
           detail::yes_no(v.hypothesis_holds) + ", conclusion " +
           (v.conclusion_holds ? detail::yes_no(*v.conclusion_holds) : std::string("n/a"));
    if (v.report_only)
      out += " (report only)";
    if (v.is_finding())
      out += "  FINDING";
    out += "\n";
    if (!v.parameters.empty()) {
      out += "   ";
      for (auto const &[k, x] : v.parameters)
        out += " " + k + "=" + std::to_string(x);
      out += "\n";
    }
    for (auto const &w : v.witnesses)
      out += "    " + w.description + ": " + w.value + "\n";
    if (!v.notes.empty())
      out += "    note: " + v.notes + "\n";
    if (r.timing_ms)
      out += "    time: " + std::to_string(*r.timing_ms) + " ms\n";
  }
  out += "summary: " + std::to_string(reports.size()) + " verdicts, " +
         std::to_string(findings) + " findings\n";
  return out;
}

/// Inverse of the structured emitter.
inline std::vector<Report> parse_reports(std::string_view text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const &e) {
    throw ParseError(e.what(), 1, e.byte);
  }
  try {
    if (doc.at("schema").get<std::string>() != report_schema)
      throw ParseError("unknown report schema", 1, 1);
    std::vector<Report> res;
    for (auto const &j : doc.at("reports"))
      res.push_back(detail::from_json(j));
    return res;
  } catch (nlohmann::json::exception const &e) {
    throw ParseError(e.what(), 1, 1);
  }
}

} // namespace psolv

#endif // PSOLV_REPORT_HPP
