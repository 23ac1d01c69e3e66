#ifndef NETTAG_TAGSET_HPP
#define NETTAG_TAGSET_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace nettag {

// Fixed, ordered inventory of tag names. The order is frozen at
// construction; every probability/activation vector in the system is
// indexed by it.
class TagSet {
 public:
  TagSet() = default;
  TagSet(std::vector<std::string> tags, std::vector<std::string> open_class);

  size_t size() const { return tags_.size(); }
  const std::string& name(size_t index) const { return tags_[index]; }
  const std::vector<std::string>& names() const { return tags_; }

  std::optional<size_t> index(const std::string& tag) const;
  bool is_open_class(size_t index) const { return open_[index]; }
  bool has_open_class() const;

  // Tagset config format: one tag per line, optionally `name<TAB>open`.
  static TagSet load(std::istream& in);
  void save(std::ostream& out) const;

  bool operator==(const TagSet& other) const;

 private:
  std::vector<std::string> tags_;
  std::vector<bool> open_;
  std::unordered_map<std::string, size_t> index_;
};

}  // namespace nettag

#endif
