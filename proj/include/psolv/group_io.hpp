#ifndef PSOLV_GROUP_IO_HPP
#define PSOLV_GROUP_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "group.hpp"
#include "perm.hpp"

// Group interchange format: one JSON document
//   {"degree":n,"generators":[[i0,i1,...],...]}
// with 0-based image lists.

namespace psolv
{

namespace detail
{

inline void line_col(std::string_view text, std::size_t offset,
                     std::size_t &line, std::size_t &col)
{
  line = 1;
  col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
}

[[noreturn]] inline void fail_at(std::string_view text, std::size_t offset,
                                 std::string const &msg)
{
  std::size_t line, col;
  line_col(text, offset, line, col);
  throw ParseError(msg, line, col);
}

} // namespace detail

inline Group parse_group(std::string_view text)
{
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (nlohmann::json::parse_error const &e) {
    detail::fail_at(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
  }
  auto where = [&](std::string_view key) {
    auto pos = text.find(key);
    return pos == std::string_view::npos ? 0 : pos;
  };
  if (!doc.is_object())
    detail::fail_at(text, 0, "expected an object");
  if (!doc.contains("degree") || !doc["degree"].is_number_unsigned() ||
      doc["degree"].get<unsigned long long>() == 0)
    detail::fail_at(text, where("\"degree\""), "degree must be a positive integer");
  auto n = doc["degree"].get<std::size_t>();
  if (!doc.contains("generators") || !doc["generators"].is_array())
    detail::fail_at(text, where("\"generators\""), "generators must be an array");

  std::vector<Perm> gens;
  for (auto const &g : doc["generators"]) {
    if (!g.is_array() || g.size() != n)
      detail::fail_at(text, where("\"generators\""),
                      "generator " + std::to_string(gens.size()) +
                        " is not an image list of length " + std::to_string(n));
    std::vector<Point> img;
    for (auto const &x : g) {
      if (!x.is_number_unsigned())
        detail::fail_at(text, where("\"generators\""), "images must be non-negative integers");
      img.push_back(x.get<Point>());
    }
    if (!Perm::is_bijection(img))
      detail::fail_at(text, where("\"generators\""),
                      "generator " + std::to_string(gens.size()) + " is not a bijection");
    gens.emplace_back(std::move(img));
  }
  return Group(n, std::move(gens));
}

inline std::string emit_group(Group const &g)
{
  nlohmann::json doc;
  doc["degree"] = g.degree();
  doc["generators"] = nlohmann::json::array();
  for (auto const &x : g.generators())
    doc["generators"].push_back(std::vector<Point>(x.images().begin(), x.images().end()));
  return doc.dump();
}

inline Group read_group_file(std::string const &path)
{
  std::ifstream in(path);
  if (!in)
    throw Error("cannot open group file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_group(ss.str());
}

} // namespace psolv

#endif // PSOLV_GROUP_IO_HPP
