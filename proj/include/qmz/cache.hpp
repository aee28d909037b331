#pragma once
// Persistent value cache: one JSON record per line, append-only, compacted on
// load (last record per key wins, malformed tails dropped).  The three doubles
// travel as 16-digit hex bit patterns so a hit reproduces the stored value bit
// for bit.  Every file operation holds an exclusive flock.
//
// Keys are canonical "model|q|args|tol" strings; a lookup matches only the
// exact key, so records written at a looser tolerance never satisfy a tighter
// request.

#include <map>
#include <optional>
#include <string>

#include "qmz/types.hpp"

namespace qmz {

struct CacheEntry {
    Cplx value{};
    double err_est = 0.0;
    long terms = 0;
    bool converged = false;
    long long timestamp = 0;  // unix seconds, set by store()
};

class ValueCache {
  public:
    explicit ValueCache(std::string path);

    std::optional<CacheEntry> lookup(const std::string& key) const;
    void store(const std::string& key, CacheEntry entry);

    static std::string make_key(Model model, double q, const ArgVector& args, double tol);

    std::size_t size() const { return entries_.size(); }
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::map<std::string, CacheEntry> entries_;
};

}  // namespace qmz
