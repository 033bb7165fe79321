#include "pdembed/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pdembed {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

Diagram finish_diagram(std::vector<Point> pts, std::size_t arity) {
  if (arity == 0) return Diagram(std::move(pts));
  if (pts.size() > arity) {
    throw std::runtime_error("diagram has more points than the requested arity");
  }
  pts.resize(arity, Point::diag());
  return Diagram(std::move(pts));
}

std::vector<Diagram> parse_csv(const std::string& text, std::size_t arity) {
  std::vector<Diagram> out;
  std::vector<Point> current;
  bool in_block = false;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) {
      if (in_block) {
        out.push_back(finish_diagram(std::move(current), arity));
        current.clear();
        in_block = false;
      }
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("malformed CSV row: " + line);
    }
    const std::string a = trim(line.substr(0, comma));
    const std::string b = trim(line.substr(comma + 1));
    if (a == "birth" && b == "death") {
      continue;  // header, may repeat per block
    }
    in_block = true;
    if (a == "diag" && b == "diag") {
      current.push_back(Point::diag());
    } else {
      current.push_back(Point(std::stod(a), std::stod(b)));
    }
  }
  if (in_block) out.push_back(finish_diagram(std::move(current), arity));
  if (out.empty()) throw std::runtime_error("no diagrams in input");
  return out;
}

Diagram parse_json_object(const nlohmann::json& obj, std::size_t arity) {
  if (!obj.is_object() || !obj.contains("points")) {
    throw std::runtime_error("JSON diagram needs a \"points\" array");
  }
  std::vector<Point> pts;
  for (const auto& e : obj.at("points")) {
    if (e.is_string()) {
      if (e.get<std::string>() != "diag") {
        throw std::runtime_error("unknown point marker: " + e.get<std::string>());
      }
      pts.push_back(Point::diag());
    } else {
      pts.push_back(Point(e.at(0).get<double>(), e.at(1).get<double>()));
    }
  }
  std::size_t n = arity;
  if (obj.contains("n")) {
    const auto declared = obj.at("n").get<std::size_t>();
    if (pts.size() > declared) throw std::runtime_error("more points than declared n");
    pts.resize(declared, Point::diag());
    if (n == 0) n = declared;
  }
  const std::size_t target = n == 0 ? pts.size() : n;
  return finish_diagram(std::move(pts), target);
}

std::vector<Diagram> parse_json(const std::string& text, std::size_t arity) {
  const auto j = nlohmann::json::parse(text);
  std::vector<Diagram> out;
  if (j.is_array()) {
    for (const auto& e : j) out.push_back(parse_json_object(e, arity));
  } else {
    out.push_back(parse_json_object(j, arity));
  }
  if (out.empty()) throw std::runtime_error("no diagrams in input");
  return out;
}

}  // namespace

std::vector<Diagram> parse_diagrams(const std::string& text, std::size_t arity) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw std::runtime_error("empty input");
  if (text[first] == '{' || text[first] == '[') return parse_json(text, arity);
  return parse_csv(text, arity);
}

std::vector<Diagram> read_diagrams(const std::string& path, std::size_t arity) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_diagrams(buf.str(), arity);
}

void write_diagrams_csv(std::ostream& os, const std::vector<Diagram>& diagrams) {
  bool first = true;
  for (const Diagram& d : diagrams) {
    if (!first) os << "\n";
    first = false;
    os << "birth,death\n";
    for (const Point& p : d.points()) {
      if (p.is_diagonal()) {
        os << "diag,diag\n";
      } else {
        os << format_double(p.birth()) << "," << format_double(p.death()) << "\n";
      }
    }
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace pdembed
