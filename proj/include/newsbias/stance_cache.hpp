#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "newsbias/errors.hpp"
#include "newsbias/text.hpp"
#include "newsbias/verdict.hpp"

namespace newsbias {

// Append-only verdict cache, one JSON line per entry. A warm cache makes
// reruns byte-identical and call-free. Loading compacts duplicate keys
// (last entry wins). An empty path keeps the cache in memory only.
class StanceCache {
 public:
  StanceCache() = default;

  explicit StanceCache(std::filesystem::path file) : file_(std::move(file)) {
    if (file_.empty()) return;
    load_and_compact();
    append_.open(file_, std::ios::app);
    if (!append_) throw Error(ErrorFamily::Internal, "cannot open cache file " + file_.string());
  }

  static std::string make_key(const std::string& classifier_id, const std::string& prompt_version,
                              const std::string& sentence, const std::string& keyword) {
    uint64_t h = fnv1a64(classifier_id);
    for (const std::string& part : {prompt_version, sentence, keyword}) {
      h = fnv1a64("\x1f", h);
      h = fnv1a64(part, h);
    }
    return hex64(h);
  }

  std::optional<Verdict> lookup(const std::string& key) const {
    std::lock_guard lock(mu_);
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  void insert(const std::string& key, Verdict v) {
    std::lock_guard lock(mu_);
    auto [it, inserted] = entries_.emplace(key, v);
    if (!inserted) return;
    if (append_.is_open()) {
      nlohmann::json line = {{"key", key}, {"verdict", verdict_name(v)}};
      append_ << line.dump() << "\n";
      append_.flush();
    }
  }

  size_t size() const {
    std::lock_guard lock(mu_);
    return entries_.size();
  }

 private:
  void load_and_compact() {
    std::ifstream in(file_);
    if (!in) return;  // no cache yet
    std::string line;
    size_t lines = 0;
    while (std::getline(in, line)) {
      if (trim(line).empty()) continue;
      ++lines;
      nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
      if (j.is_discarded() || !j.contains("key") || !j.contains("verdict")) continue;
      auto v = verdict_from_name(j["verdict"].get<std::string>());
      if (!v) continue;
      entries_[j["key"].get<std::string>()] = *v;
    }
    in.close();
    if (lines > entries_.size()) {
      std::ofstream out(file_, std::ios::trunc);
      for (const auto& [key, v] : entries_) {
        nlohmann::json j = {{"key", key}, {"verdict", verdict_name(v)}};
        out << j.dump() << "\n";
      }
    }
  }

  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, Verdict> entries_;
  std::ofstream append_;
};

}  // namespace newsbias
