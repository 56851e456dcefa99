#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace smrel {

/* Failure taxonomy shared by the whole library.  Every throwing path uses one
 * of these kinds so the C API and the CLI can map failures to stable codes. */
enum class ErrorKind {
    domain_error,         /* precondition violated by the caller            */
    precision_exhausted,  /* adaptive precision hit its configured ceiling  */
    budget_exhausted,     /* search/verification budget ran out             */
    indeterminate,        /* could neither certify nor refute               */
    parse_error,          /* malformed serialized input                     */
    internal_error,       /* invariant broken inside the library            */
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& m) { throw Error(k, m); }
[[noreturn]] inline void fail_domain(const std::string& m) { fail(ErrorKind::domain_error, m); }
[[noreturn]] inline void fail_precision(const std::string& m) { fail(ErrorKind::precision_exhausted, m); }
[[noreturn]] inline void fail_budget(const std::string& m) { fail(ErrorKind::budget_exhausted, m); }
[[noreturn]] inline void fail_indeterminate(const std::string& m) { fail(ErrorKind::indeterminate, m); }
[[noreturn]] inline void fail_parse(const std::string& m) { fail(ErrorKind::parse_error, m); }
[[noreturn]] inline void fail_internal(const std::string& m) { fail(ErrorKind::internal_error, m); }

/* FNV-1a; used for content-addressed report file names.  Stability across
 * runs of the same build is all that is required. */
inline std::uint64_t fnv1a(const void* data, std::size_t n) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::string content_hash_hex(const std::string& payload);

/* splitmix64: tiny deterministic generator for reproducible sampling in
 * searches and tests (never used where rigor matters). */
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    /* uniform in [0, n) */
    std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
    /* uniform in [lo, hi] inclusive */
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    double unit() { return (next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

}  // namespace smrel
