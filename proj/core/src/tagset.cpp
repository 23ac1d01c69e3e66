#include "nettag/tagset.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include "nettag/error.hpp"

namespace nettag {

TagSet::TagSet(std::vector<std::string> tags,
               std::vector<std::string> open_class)
    : tags_(std::move(tags)), open_(tags_.size(), false) {
  for (size_t i = 0; i < tags_.size(); ++i) {
    if (tags_[i].empty()) throw ArgumentError("empty tag name");
    if (!index_.emplace(tags_[i], i).second)
      throw ArgumentError("duplicate tag name: " + tags_[i]);
  }
  for (const std::string& t : open_class) {
    auto it = index_.find(t);
    if (it == index_.end())
      throw ArgumentError("open-class tag not in tagset: " + t);
    open_[it->second] = true;
  }
}

std::optional<size_t> TagSet::index(const std::string& tag) const {
  auto it = index_.find(tag);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool TagSet::has_open_class() const {
  return std::find(open_.begin(), open_.end(), true) != open_.end();
}

TagSet TagSet::load(std::istream& in) {
  std::vector<std::string> tags;
  std::vector<std::string> open;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    size_t tab = line.find('\t');
    if (tab == std::string::npos) {
      tags.push_back(line);
    } else {
      std::string name = line.substr(0, tab);
      std::string flag = line.substr(tab + 1);
      if (flag != "open")
        throw ParseError("tagset line " + std::to_string(line_no) +
                         ": unknown flag '" + flag + "'");
      tags.push_back(name);
      open.push_back(name);
    }
  }
  return TagSet(std::move(tags), std::move(open));
}

void TagSet::save(std::ostream& out) const {
  for (size_t i = 0; i < tags_.size(); ++i) {
    out << tags_[i];
    if (open_[i]) out << "\topen";
    out << '\n';
  }
}

bool TagSet::operator==(const TagSet& other) const {
  return tags_ == other.tags_ && open_ == other.open_;
}

}  // namespace nettag
