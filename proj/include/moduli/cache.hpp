#ifndef MODULI_CACHE_HPP
#define MODULI_CACHE_HPP

#include <map>
#include <optional>
#include <string>

namespace moduli {

// Line-oriented persistent memo store.  File format:
//   # <version tag>
//   namespace:key=value
// A version mismatch discards the file contents (values are always
// recomputable); writes take an advisory lock on a sidecar lock file.
class CacheStore {
public:
    static constexpr const char* kVersion = "moduli-cache-v1";

    // $MODULI_CACHE if set, otherwise a per-user data directory
    // ($XDG_DATA_HOME or ~/.local/share) under moduli/cache.txt.
    static std::string default_path();

    explicit CacheStore(std::string path);

    std::optional<std::string> get(const std::string& ns, const std::string& key) const;
    void put(const std::string& ns, const std::string& key, const std::string& value);
    void save() const;

    std::size_t size() const { return entries_.size(); }
    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::map<std::string, std::string> entries_; // "ns:key" -> value
};

} // namespace moduli

#endif // MODULI_CACHE_HPP
