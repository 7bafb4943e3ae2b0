#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include "invariants.hpp"
#include "pd_io.hpp"

namespace tanglecalc {

// Determinant and double-cover homology of one diagram.
struct CachedInvariants {
    Integer determinant;
    AbelianGroup homology;
    bool split = false;
    friend bool operator==(const CachedInvariants&, const CachedInvariants&) = default;
};

inline constexpr const char* kCacheDirEnv = "TANGLECALC_CACHE_DIR";

// Content-addressed by canonical diagram form. Safe to share between threads;
// inserting a key twice with equal values is harmless.
class InvariantCache {
public:
    InvariantCache() = default;
    explicit InvariantCache(std::filesystem::path dir) : dir_(std::move(dir))
    {
        std::error_code ec;
        std::filesystem::create_directories(*dir_, ec);
        if (ec)
            throw IoError("cannot create cache directory " + dir_->string() + ": " + ec.message());
    }

    // Directory from the environment override, or none (memory only).
    static std::unique_ptr<InvariantCache> from_env(const std::optional<std::string>& dir)
    {
        if (const char* env = std::getenv(kCacheDirEnv); env && *env)
            return std::make_unique<InvariantCache>(env);
        if (dir)
            return std::make_unique<InvariantCache>(*dir);
        return std::make_unique<InvariantCache>();
    }

    std::optional<CachedInvariants> get(const std::string& key) const
    {
        {
            std::lock_guard lock(mu_);
            if (auto it = mem_.find(key); it != mem_.end())
                return it->second;
        }
        if (!dir_)
            return std::nullopt;
        std::ifstream in(file_for(key));
        if (!in)
            return std::nullopt;
        std::string stored;
        std::getline(in, stored);
        if (stored != key)
            return std::nullopt; // hash collision
        CachedInvariants v;
        std::string det, rank, split;
        in >> det >> rank >> split;
        if (!in)
            return std::nullopt;
        v.determinant = Integer(det);
        v.homology.rank = std::stoul(rank);
        v.split = split == "1";
        std::string t;
        while (in >> t)
            v.homology.torsion.emplace_back(t);
        std::lock_guard lock(mu_);
        mem_.emplace(key, v);
        return v;
    }

    void put(const std::string& key, const CachedInvariants& v)
    {
        {
            std::lock_guard lock(mu_);
            mem_[key] = v;
        }
        if (!dir_)
            return;
        std::ostringstream os;
        os << key << "\n" << v.determinant.str() << " " << v.homology.rank << " " << (v.split ? 1 : 0);
        for (const auto& t : v.homology.torsion)
            os << " " << t.str();
        os << "\n";
        auto target = file_for(key);
        auto tmp = target;
        tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
        {
            std::ofstream out(tmp, std::ios::trunc);
            if (!out)
                throw IoError("cannot write cache file " + tmp.string());
            out << os.str();
        }
        std::error_code ec;
        std::filesystem::rename(tmp, target, ec);
        if (ec)
            throw IoError("cannot write cache file " + target.string() + ": " + ec.message());
    }

    std::size_t memory_size() const
    {
        std::lock_guard lock(mu_);
        return mem_.size();
    }

private:
    static std::uint64_t fnv1a(const std::string& s)
    {
        std::uint64_t h = 1469598103934665603ULL;
        for (unsigned char c : s)
            h = (h ^ c) * 1099511628211ULL;
        return h;
    }

    std::filesystem::path file_for(const std::string& key) const
    {
        std::ostringstream name;
        name << std::hex << fnv1a(key) << ".inv";
        return *dir_ / name.str();
    }

    std::optional<std::filesystem::path> dir_;
    mutable std::mutex mu_;
    mutable std::map<std::string, CachedInvariants> mem_;
};

inline CachedInvariants compute_invariants(const PlanarDiagram& d)
{
    auto info = determinant_info(d);
    return {info.value, double_cover_homology(d), info.split};
}

// Goes through the cache when one is given.
inline CachedInvariants invariants_of(const PlanarDiagram& d, InvariantCache* cache)
{
    if (!cache)
        return compute_invariants(d);
    std::string key = canonical_form(d.unoriented());
    if (auto hit = cache->get(key))
        return *hit;
    CachedInvariants v = compute_invariants(d);
    cache->put(key, v);
    return v;
}

} // namespace tanglecalc
