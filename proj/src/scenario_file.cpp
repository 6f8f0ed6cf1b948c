#include "pmloc/scenario_file.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <fstream>
#include <sstream>
#include <vector>

#include <fmt/format.h>

#include "pmloc/error.hpp"

namespace pmloc {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, const std::string& source) : text_(text), source_(source) {}

  ScenarioFile run() {
    ScenarioFile f;
    Scenario& s = f.scenario;
    s.beams.clear();
    std::vector<Vec2> vertices;
    std::optional<std::pair<double, double>> rectangle;
    bool heading_given = false;
    bool known_heading_given = false;

    std::size_t pos = 0;
    while (pos <= text_.size()) {
      std::size_t end = text_.find('\n', pos);
      if (end == std::string_view::npos) end = text_.size();
      std::string_view line = text_.substr(pos, end - pos);
      pos = end + 1;
      ++line_no_;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      auto words = split_words(line);
      if (words.empty()) continue;

      if (words[0].front() == '[') {
        if (words.size() != 1 || words[0].back() != ']') fail("", "malformed section header");
        section_ = std::string(words[0].substr(1, words[0].size() - 2));
        static const char* known[] = {"map", "pose", "beams", "grid", "run", "output"};
        if (std::find(std::begin(known), std::end(known), section_) == std::end(known)) {
          fail("", "unknown section");
        }
        continue;
      }
      key_ = std::string(words[0]);
      args_.assign(words.begin() + 1, words.end());

      if (section_.empty()) {
        fail(key_, "entry outside of any section");
      } else if (section_ == "map") {
        if (key_ == "rectangle") {
          want(2);
          rectangle = {number(0), number(1)};
        } else if (key_ == "vertex") {
          want(2);
          vertices.push_back({number(0), number(1)});
        } else {
          unknown_key();
        }
      } else if (section_ == "pose") {
        want(1);
        if (key_ == "x1") {
          s.true_pose.x1 = number(0);
        } else if (key_ == "x2") {
          s.true_pose.x2 = number(0);
        } else if (key_ == "heading") {
          s.true_pose.heading_deg = normalize_degrees(number(0));
          heading_given = true;
        } else {
          unknown_key();
        }
      } else if (section_ == "beams") {
        // The key is the angle itself.
        args_.insert(args_.begin(), words[0]);
        key_ = "beam";
        if (args_.size() != 1 && args_.size() != 2) fail(key_, "expected <angle> [<noise rms>]");
        Beam b;
        b.angle_deg = number(0);
        b.noise_rms = args_.size() == 2 ? number(1) : LrfSpec{}.noise_rms;
        if (!(b.noise_rms > 0.0)) fail(key_, "noise rms must be positive");
        s.beams.push_back(b);
      } else if (section_ == "grid") {
        if (key_ == "n1") {
          want(1);
          s.grid.n1 = integer(0);
        } else if (key_ == "n2") {
          want(1);
          s.grid.n2 = integer(0);
        } else if (key_ == "nk") {
          want(1);
          s.grid.nk = integer(0);
        } else if (key_ == "known_heading") {
          want(1);
          s.grid.known_heading_deg = normalize_degrees(number(0));
          known_heading_given = true;
        } else if (key_ == "bounds") {
          want(4);
          s.grid.bounds = Box{number(0), number(1), number(2), number(3)};
        } else if (key_ == "max_range") {
          want(1);
          s.grid.max_range = number(0);
          if (!(*s.grid.max_range > 0.0)) fail(key_, "must be positive");
        } else {
          unknown_key();
        }
      } else if (section_ == "run") {
        want(1);
        if (key_ == "seed") {
          s.seed = unsigned64(0);
        } else if (key_ == "noise_free") {
          s.noise_free = boolean(0);
        } else {
          unknown_key();
        }
      } else if (section_ == "output") {
        want(1);
        if (key_ == "dir") {
          f.output.dir = std::string(args_[0]);
        } else if (key_ == "export_grid") {
          f.output.export_grid = boolean(0);
        } else if (key_ == "heatmap") {
          f.output.heatmap = boolean(0);
        } else {
          unknown_key();
        }
      }
    }

    section_ = "map";
    key_.clear();
    if (rectangle && !vertices.empty()) fail("", "use either rectangle or vertex entries, not both");
    try {
      if (rectangle) {
        s.map = make_rectangle(rectangle->first, rectangle->second);
      } else if (!vertices.empty()) {
        s.map = RoomMap(vertices);
      } else {
        fail("", "missing room geometry");
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::parse) throw;
      fail("", e.what());
    }
    if (!known_heading_given && heading_given) s.grid.known_heading_deg = s.true_pose.heading_deg;
    if (s.beams.empty()) {
      section_ = "beams";
      fail("", "at least one beam is required");
    }
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& reason) const {
    std::string where = fmt::format("{}:{}: [{}]", source_, line_no_, section_);
    if (!key.empty()) where += " " + key;
    throw Error(ErrorKind::parse, where + ": " + reason);
  }

  void unknown_key() const { fail(key_, "unknown key"); }

  void want(std::size_t n) const {
    if (args_.size() != n) fail(key_, fmt::format("expected {} value(s), got {}", n, args_.size()));
  }

  double number(std::size_t i) const {
    const std::string_view w = args_[i];
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size() || !std::isfinite(v)) {
      fail(key_, fmt::format("'{}' is not a number", w));
    }
    return v;
  }

  int integer(std::size_t i) const {
    const std::string_view w = args_[i];
    int v = 0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      fail(key_, fmt::format("'{}' is not an integer", w));
    }
    return v;
  }

  std::uint64_t unsigned64(std::size_t i) const {
    const std::string_view w = args_[i];
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      fail(key_, fmt::format("'{}' is not an unsigned integer", w));
    }
    return v;
  }

  bool boolean(std::size_t i) const {
    const std::string_view w = args_[i];
    if (w == "true" || w == "1" || w == "yes") return true;
    if (w == "false" || w == "0" || w == "no") return false;
    fail(key_, fmt::format("'{}' is not a boolean", w));
  }

  std::string_view text_;
  const std::string& source_;
  int line_no_ = 0;
  std::string section_;
  std::string key_;
  std::vector<std::string_view> args_;
};

// Shortest representation that parses back to the same double.
std::string exact(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::string flag(bool b) { return b ? "true" : "false"; }

}  // namespace

ScenarioFile parse_scenario(std::string_view text, const std::string& source) {
  return Parser(text, source).run();
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::parse, path + ": cannot open scenario file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string serialize_scenario(const ScenarioFile& file) {
  const Scenario& s = file.scenario;
  std::string out = "# pmloc scenario\n[map]\n";
  const Box& box = s.map.bounding_box();
  const bool is_rectangle = box.x1_min == 0.0 && box.x2_min == 0.0 &&
                            s.map == make_rectangle(box.x1_max, box.x2_max);
  if (is_rectangle) {
    out += fmt::format("rectangle {} {}\n", exact(box.x1_max), exact(box.x2_max));
  } else {
    for (const Vec2& v : s.map.vertices()) {
      out += fmt::format("vertex {} {}\n", exact(v.x1), exact(v.x2));
    }
  }
  out += fmt::format("[pose]\nx1 {}\nx2 {}\nheading {}\n", exact(s.true_pose.x1),
                     exact(s.true_pose.x2), exact(s.true_pose.heading_deg));
  out += "[beams]\n";
  for (const Beam& b : s.beams) out += fmt::format("{} {}\n", exact(b.angle_deg), exact(b.noise_rms));
  out += fmt::format("[grid]\nn1 {}\nn2 {}\nnk {}\nknown_heading {}\n", s.grid.n1, s.grid.n2,
                     s.grid.nk, exact(s.grid.known_heading_deg));
  if (s.grid.bounds) {
    const Box& b = *s.grid.bounds;
    out += fmt::format("bounds {} {} {} {}\n", exact(b.x1_min), exact(b.x1_max), exact(b.x2_min),
                       exact(b.x2_max));
  }
  if (s.grid.max_range) out += fmt::format("max_range {}\n", exact(*s.grid.max_range));
  out += fmt::format("[run]\nseed {}\nnoise_free {}\n", s.seed, flag(s.noise_free));
  out += fmt::format("[output]\ndir {}\nexport_grid {}\nheatmap {}\n", file.output.dir,
                     flag(file.output.export_grid), flag(file.output.heatmap));
  return out;
}

}  // namespace pmloc
