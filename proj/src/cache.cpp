#include <moduli/cache.hpp>

#include <cstdlib>
#include <fcntl.h>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <sys/file.h>
#include <unistd.h>

namespace moduli {

std::string CacheStore::default_path() {
    if (const char* env = std::getenv("MODULI_CACHE"); env && *env) return env;
    std::string base;
    if (const char* xdg = std::getenv("XDG_DATA_HOME"); xdg && *xdg) {
        base = xdg;
    } else if (const char* home = std::getenv("HOME"); home && *home) {
        base = std::string(home) + "/.local/share";
    } else {
        base = ".";
    }
    return base + "/moduli/cache.txt";
}

CacheStore::CacheStore(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in.good()) return;
    std::string line;
    if (!std::getline(in, line) || line != std::string("# ") + kVersion)
        return; // version mismatch or unversioned file: ignore contents
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        entries_[line.substr(0, eq)] = line.substr(eq + 1);
    }
}

std::optional<std::string> CacheStore::get(const std::string& ns, const std::string& key) const {
    auto it = entries_.find(ns + ":" + key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void CacheStore::put(const std::string& ns, const std::string& key, const std::string& value) {
    if (ns.find_first_of(":=\n") != std::string::npos ||
        key.find_first_of("=\n") != std::string::npos || value.find('\n') != std::string::npos)
        throw std::invalid_argument("CacheStore::put: separator characters in entry");
    entries_[ns + ":" + key] = value;
}

void CacheStore::save() const {
    std::filesystem::path p(path_);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    // Advisory write lock; readers of the completed file need no lock because
    // the content is swapped in atomically via rename.
    std::string lock_path = path_ + ".lock";
    int lock_fd = ::open(lock_path.c_str(), O_CREAT | O_RDWR, 0644);
    if (lock_fd >= 0) ::flock(lock_fd, LOCK_EX);
    std::string tmp = path_ + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << "# " << kVersion << '\n';
        for (const auto& [k, v] : entries_) out << k << '=' << v << '\n';
    }
    std::filesystem::rename(tmp, path_);
    if (lock_fd >= 0) {
        ::flock(lock_fd, LOCK_UN);
        ::close(lock_fd);
    }
}

} // namespace moduli
