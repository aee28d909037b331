#include "qmz/cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "qmz/argtext.hpp"
#include "qmz/errors.hpp"

namespace qmz {

namespace {

using nlohmann::json;

std::string hex_bits(double x) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(bits));
    return buf;
}

bool bits_from_hex(const std::string& text, double& out) {
    if (text.size() != 16) return false;
    std::uint64_t bits = 0;
    for (char c : text) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else return false;
        bits = (bits << 4) | static_cast<std::uint64_t>(d);
    }
    std::memcpy(&out, &bits, sizeof out);
    return true;
}

std::string record_line(const std::string& key, const CacheEntry& e) {
    json rec;
    rec["key"] = key;
    rec["value_re"] = hex_bits(e.value.real());
    rec["value_im"] = hex_bits(e.value.imag());
    rec["err_est"] = hex_bits(e.err_est);
    rec["terms"] = e.terms;
    rec["converged"] = e.converged;
    rec["timestamp"] = e.timestamp;
    return rec.dump();
}

// scoped fd + flock pair; creation failure throws
struct LockedFile {
    int fd = -1;
    explicit LockedFile(const std::string& path) {
        fd = ::open(path.c_str(), O_RDWR | O_CREAT, 0644);
        if (fd < 0) throw error("cache: cannot open " + path + ": " + std::strerror(errno));
        if (::flock(fd, LOCK_EX) != 0) {
            const int e = errno;
            ::close(fd);
            throw error("cache: cannot lock " + path + ": " + std::strerror(e));
        }
    }
    ~LockedFile() {
        if (fd >= 0) ::close(fd);  // closing drops the lock
    }
    LockedFile(const LockedFile&) = delete;
    LockedFile& operator=(const LockedFile&) = delete;
};

std::string read_all(int fd) {
    std::string out;
    char buf[1 << 16];
    ::lseek(fd, 0, SEEK_SET);
    for (;;) {
        const ssize_t n = ::read(fd, buf, sizeof buf);
        if (n < 0) throw error(std::string("cache: read failed: ") + std::strerror(errno));
        if (n == 0) break;
        out.append(buf, static_cast<size_t>(n));
    }
    return out;
}

void write_all(int fd, const std::string& text) {
    if (::ftruncate(fd, 0) != 0)
        throw error(std::string("cache: truncate failed: ") + std::strerror(errno));
    ::lseek(fd, 0, SEEK_SET);
    size_t off = 0;
    while (off < text.size()) {
        const ssize_t n = ::write(fd, text.data() + off, text.size() - off);
        if (n < 0) throw error(std::string("cache: write failed: ") + std::strerror(errno));
        off += static_cast<size_t>(n);
    }
}

}  // namespace

ValueCache::ValueCache(std::string path) : path_(std::move(path)) {
    LockedFile file(path_);
    const std::string body = read_all(file.fd);

    size_t lines = 0;
    size_t kept = 0;
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++lines;
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object()) continue;
        if (!rec.contains("key") || !rec["key"].is_string()) continue;
        CacheEntry e;
        double re, im, err;
        if (!rec.contains("value_re") || !rec["value_re"].is_string() ||
            !bits_from_hex(rec["value_re"].get<std::string>(), re))
            continue;
        if (!rec.contains("value_im") || !rec["value_im"].is_string() ||
            !bits_from_hex(rec["value_im"].get<std::string>(), im))
            continue;
        if (!rec.contains("err_est") || !rec["err_est"].is_string() ||
            !bits_from_hex(rec["err_est"].get<std::string>(), err))
            continue;
        e.value = Cplx(re, im);
        e.err_est = err;
        e.terms = rec.value("terms", 0L);
        e.converged = rec.value("converged", false);
        e.timestamp = rec.value("timestamp", 0LL);
        entries_[rec["key"].get<std::string>()] = e;
        ++kept;
    }

    // rewrite only when duplicates or junk were dropped
    if (lines != entries_.size() || kept != lines) {
        std::string out;
        for (const auto& [key, entry] : entries_) {
            out += record_line(key, entry);
            out += '\n';
        }
        write_all(file.fd, out);
    }
}

std::optional<CacheEntry> ValueCache::lookup(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void ValueCache::store(const std::string& key, CacheEntry entry) {
    entry.timestamp = static_cast<long long>(std::time(nullptr));
    LockedFile file(path_);
    ::lseek(file.fd, 0, SEEK_END);
    const std::string line = record_line(key, entry) + "\n";
    size_t off = 0;
    while (off < line.size()) {
        const ssize_t n = ::write(file.fd, line.data() + off, line.size() - off);
        if (n < 0) throw error(std::string("cache: append failed: ") + std::strerror(errno));
        off += static_cast<size_t>(n);
    }
    entries_[key] = entry;
}

std::string ValueCache::make_key(Model model, double q, const ArgVector& args, double tol) {
    std::string key = model_name(model);
    key += '|';
    key += format_real(q);
    key += '|';
    key += format_arg_vector(args);
    key += '|';
    key += format_real(tol);
    return key;
}

}  // namespace qmz
