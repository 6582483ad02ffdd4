#include "unitfreq/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "unitfreq/version.hpp"

namespace unitfreq {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr std::uint64_t kPMaxCap = 100'000'000;  // prime tables memory cap

void validate_config(const SweepConfig& c) {
    if (c.d_min < 2 || c.d_max < c.d_min) throw std::invalid_argument("sweep config: need 2 <= d_min <= d_max");
    if (c.p_min < 3 || c.p_max < c.p_min) throw std::invalid_argument("sweep config: need 3 <= p_min <= p_max");
    if (c.p_max > kPMaxCap) throw std::invalid_argument("sweep config: p_max exceeds the 10^8 cap");
    if (c.workers < 1) throw std::invalid_argument("sweep config: workers must be >= 1");
    if (c.chunk_size < 1) throw std::invalid_argument("sweep config: chunk_size must be >= 1");
    if (c.checkpoint_every < 1) throw std::invalid_argument("sweep config: checkpoint_every must be >= 1");
}

using DRange = std::pair<std::uint64_t, std::uint64_t>;

bool in_ranges(const std::vector<DRange>& ranges, std::uint64_t d) {
    auto it = std::upper_bound(ranges.begin(), ranges.end(), d,
                               [](std::uint64_t v, const DRange& r) { return v < r.first; });
    if (it == ranges.begin()) return false;
    --it;
    return d <= it->second;
}

std::vector<DRange> coalesce(std::vector<DRange> ranges) {
    std::sort(ranges.begin(), ranges.end());
    std::vector<DRange> out;
    for (const DRange& r : ranges) {
        if (!out.empty() && r.first <= out.back().second + 1)
            out.back().second = std::max(out.back().second, r.second);
        else
            out.push_back(r);
    }
    return out;
}

std::array<Histogram, 4> to_histograms(const std::array<std::vector<std::uint64_t>, 4>& acc) {
    std::array<Histogram, 4> out;
    for (int j = 0; j < 4; ++j) {
        out[j].case_j = j + 1;
        for (std::uint64_t q = 1; q < acc[j].size(); ++q) {
            if (acc[j][q] != 0) {
                out[j].counts.emplace(q, acc[j][q]);
                out[j].total += acc[j][q];
            }
        }
    }
    return out;
}

json histograms_to_json(const std::array<Histogram, 4>& hists) {
    json arr = json::array();
    for (const Histogram& h : hists) {
        json counts = json::array();
        for (const auto& [q, c] : h.counts) counts.push_back(json::array({q, c}));
        arr.push_back(json{{"case", h.case_j}, {"total", h.total}, {"counts", std::move(counts)}});
    }
    return arr;
}

std::array<Histogram, 4> histograms_from_json(const json& arr) {
    if (!arr.is_array() || arr.size() != 4) throw CheckpointError("corrupt checkpoint: bad histogram array");
    std::array<Histogram, 4> out;
    for (const json& hj : arr) {
        const int j = hj.at("case").get<int>();
        if (j < 1 || j > 4 || out[j - 1].case_j != 0) throw CheckpointError("corrupt checkpoint: bad case key");
        Histogram& h = out[j - 1];
        h.case_j = j;
        std::uint64_t sum = 0;
        for (const json& e : hj.at("counts")) {
            const auto q = e.at(0).get<std::uint64_t>();
            const auto c = e.at(1).get<std::uint64_t>();
            if (q == 0 || c == 0 || h.counts.count(q)) throw CheckpointError("corrupt checkpoint: bad count entry");
            h.counts.emplace(q, c);
            sum += c;
        }
        h.total = hj.at("total").get<std::uint64_t>();
        if (h.total != sum) throw CheckpointError("corrupt checkpoint: total does not match counts");
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open for writing: " + tmp);
        os << content;
        if (!os.flush()) throw std::runtime_error("write failed: " + tmp);
    }
    fs::rename(tmp, path);
}

}  // namespace

Histogram merge(const Histogram& a, const Histogram& b) {
    if (a.case_j != b.case_j) throw std::invalid_argument("merge: histogram case mismatch");
    Histogram out = a;
    for (const auto& [q, c] : b.counts) out.counts[q] += c;
    out.total = a.total + b.total;
    return out;
}

std::string config_digest(const SweepConfig& c) {
    // FNV-1a 64 over the range parameters
    const std::string key = "sweep-v1:" + std::to_string(c.d_min) + "," + std::to_string(c.d_max) + "," +
                            std::to_string(c.p_min) + "," + std::to_string(c.p_max);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : key) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

void checkpoint_save(const Checkpoint& cp, const std::string& path) {
    json j;
    j["schema"] = cp.schema;
    j["digest"] = cp.digest;
    j["pairs"] = cp.pairs;
    json ranges = json::array();
    for (const auto& [lo, hi] : cp.completed_d) ranges.push_back(json::array({lo, hi}));
    j["completed_d"] = std::move(ranges);
    j["histograms"] = histograms_to_json(cp.partial);
    write_file_atomic(path, j.dump());
}

Checkpoint checkpoint_load(const std::string& path, const SweepConfig& config) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw CheckpointError("cannot open checkpoint: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw CheckpointError(std::string("corrupt checkpoint: ") + e.what());
    }

    Checkpoint cp;
    try {
        cp.schema = j.at("schema").get<int>();
        if (cp.schema != 1) throw CheckpointError("unsupported checkpoint schema");
        cp.digest = j.at("digest").get<std::string>();
        if (cp.digest != config_digest(config))
            throw CheckpointError("checkpoint/config mismatch: digest differs, refusing to resume");
        cp.pairs = j.at("pairs").get<std::uint64_t>();
        for (const json& e : j.at("completed_d")) {
            const auto lo = e.at(0).get<std::uint64_t>();
            const auto hi = e.at(1).get<std::uint64_t>();
            if (lo > hi) throw CheckpointError("corrupt checkpoint: bad d range");
            cp.completed_d.emplace_back(lo, hi);
        }
        cp.partial = histograms_from_json(j.at("histograms"));
    } catch (const json::exception& e) {
        throw CheckpointError(std::string("corrupt checkpoint: ") + e.what());
    }

    // ranges must be sorted and disjoint
    for (std::size_t i = 1; i < cp.completed_d.size(); ++i)
        if (cp.completed_d[i].first <= cp.completed_d[i - 1].second)
            throw CheckpointError("corrupt checkpoint: overlapping d ranges");
    return cp;
}

SweepResult run_sweep(const SweepConfig& config) {
    validate_config(config);
    const auto t_start = std::chrono::steady_clock::now();

    const PrimeTables tables = build_tables(config.p_max + 1);
    const std::vector<std::uint64_t> all_d = valid_d_in_range(config.d_min, config.d_max);

    std::vector<std::uint32_t> ps;
    for (std::uint32_t pr : tables.primes)
        if (pr >= config.p_min && pr <= config.p_max) ps.push_back(pr);

    const std::string digest = config_digest(config);
    const std::uint64_t qcap = config.p_max + 1;  // q <= q0 <= p+1

    std::array<std::vector<std::uint64_t>, 4> acc;
    for (auto& v : acc) v.assign(qcap + 1, 0);
    std::uint64_t pairs = 0;
    std::uint64_t violations = 0;
    std::vector<DRange> done;

    const bool checkpointing = !config.checkpoint_path.empty();
    if (checkpointing && fs::exists(config.checkpoint_path)) {
        const Checkpoint cp = checkpoint_load(config.checkpoint_path, config);
        for (int j = 0; j < 4; ++j) {
            for (const auto& [q, c] : cp.partial[j].counts) {
                if (q > qcap) throw CheckpointError("corrupt checkpoint: q exceeds p_max+1");
                acc[j][q] += c;
            }
        }
        pairs = cp.pairs;
        done = cp.completed_d;
    }

    std::vector<std::uint64_t> ds;
    ds.reserve(all_d.size());
    for (std::uint64_t d : all_d)
        if (!in_ranges(done, d)) ds.push_back(d);

    const std::uint64_t n_chunks = (ds.size() + config.chunk_size - 1) / config.chunk_size;
    const std::uint64_t run_chunks = config.max_chunks == 0 ? n_chunks : std::min(n_chunks, config.max_chunks);

    std::atomic<std::uint64_t> next_chunk{0};
    std::atomic<bool> stop{false};
    std::mutex mu;
    std::uint64_t chunks_completed = 0;
    std::uint64_t since_save = 0;
    std::exception_ptr first_error;

    auto save_checkpoint_locked = [&]() {
        Checkpoint cp;
        cp.digest = digest;
        cp.completed_d = coalesce(done);
        cp.partial = to_histograms(acc);
        cp.pairs = pairs;
        checkpoint_save(cp, config.checkpoint_path);
    };

    auto worker = [&]() {
        std::array<std::vector<std::uint64_t>, 4> local;
        for (auto& v : local) v.assign(qcap + 1, 0);
        try {
            for (;;) {
                if (stop.load(std::memory_order_relaxed)) break;
                const std::uint64_t c = next_chunk.fetch_add(1);
                if (c >= run_chunks) break;
                const std::size_t i0 = static_cast<std::size_t>(c) * config.chunk_size;
                const std::size_t i1 = std::min(ds.size(), i0 + config.chunk_size);

                std::uint64_t lpairs = 0, lviol = 0;
                for (std::size_t i = i0; i < i1; ++i) {
                    const std::uint64_t d = ds[i];
                    // the expansion and norm sign are computed once per d and
                    // reused for every p in the chunk
                    const CFExpansion cf = cf_expand(make_field_unchecked(d));
                    for (std::uint32_t p : ps) {
                        if (d % p == 0) continue;
                        const UnitResidue u = unit_residue_from_cf(cf, d, p);
                        const OrderResult r = order_and_quotient(u, d, tables);
                        local[static_cast<std::size_t>(r.key.j - 1)][r.q] += 1;
                        ++lpairs;
                        // divisor-law recheck on every record
                        const std::uint64_t q0_expect =
                            (u.norm_sign > 0) ? (case_ls(r.key) > 0 ? (p - 1) / 2 : (p + 1) / 2)
                                              : (case_ls(r.key) > 0 ? p - 1ull : p + 1ull);
                        if (r.n * r.q != r.q0 || r.q0 != q0_expect) ++lviol;
                    }
                }

                {
                    std::lock_guard<std::mutex> lk(mu);
                    for (int j = 0; j < 4; ++j) {
                        for (std::uint64_t q = 1; q <= qcap; ++q) {
                            if (local[j][q]) {
                                acc[j][q] += local[j][q];
                                local[j][q] = 0;
                            }
                        }
                    }
                    pairs += lpairs;
                    violations += lviol;
                    done.emplace_back(ds[i0], ds[i1 - 1]);
                    ++chunks_completed;
                    if (checkpointing && ++since_save >= config.checkpoint_every) {
                        save_checkpoint_locked();
                        since_save = 0;
                    }
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(mu);
            if (!first_error) first_error = std::current_exception();
            stop.store(true);
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(config.workers);
    for (unsigned w = 0; w < config.workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);

    SweepResult res;
    res.histograms = to_histograms(acc);
    res.stats.pairs = pairs;
    res.stats.violations = violations;
    res.stats.d_total = all_d.size();
    res.stats.d_done = all_d.size() - ds.size() + std::min<std::uint64_t>(ds.size(), chunks_completed * config.chunk_size);
    res.stats.complete = (chunks_completed == n_chunks);
    res.stats.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

    // every pair lands in exactly one case
    std::uint64_t sum = 0;
    for (const Histogram& h : res.histograms) sum += h.total;
    if (sum != pairs) throw std::runtime_error("sweep: case totals do not add up to pair count");

    if (res.stats.complete) {
        if (!config.output_path.empty()) {
            write_output_csv(res, config.output_path);
            write_metadata(res, config, config.output_path);
        }
        if (checkpointing && fs::exists(config.checkpoint_path)) fs::remove(config.checkpoint_path);
    } else if (checkpointing) {
        done = coalesce(done);
        Checkpoint cp;
        cp.digest = digest;
        cp.completed_d = done;
        cp.partial = res.histograms;
        cp.pairs = pairs;
        checkpoint_save(cp, config.checkpoint_path);
    }
    return res;
}

void write_output_csv(const SweepResult& result, const std::string& path) {
    std::string out = "case,q,count,total\n";
    for (const Histogram& h : result.histograms) {
        for (const auto& [q, c] : h.counts) {
            out += std::to_string(h.case_j);
            out += ',';
            out += std::to_string(q);
            out += ',';
            out += std::to_string(c);
            out += ',';
            out += std::to_string(h.total);
            out += '\n';
        }
    }
    write_file_atomic(path, out);
}

void write_metadata(const SweepResult& result, const SweepConfig& config, const std::string& output_path) {
    json j;
    j["schema"] = 1;
    j["version"] = UNITFREQ_VERSION;
    j["config"] = {{"d_min", config.d_min}, {"d_max", config.d_max},   {"p_min", config.p_min},
                   {"p_max", config.p_max}, {"workers", config.workers}, {"chunk_size", config.chunk_size}};
    j["wall_seconds"] = result.stats.wall_seconds;
    j["pairs"] = result.stats.pairs;
    j["violations"] = result.stats.violations;
    json totals = json::array();
    for (const Histogram& h : result.histograms) totals.push_back(h.total);
    j["totals"] = std::move(totals);
    write_file_atomic(output_path + ".meta.json", j.dump(2) + "\n");
}

std::array<Histogram, 4> read_output_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open sweep output: " + path);
    std::string line;
    if (!std::getline(is, line) || line != "case,q,count,total")
        throw std::runtime_error("bad sweep output header in " + path);

    std::array<Histogram, 4> out;
    for (int j = 0; j < 4; ++j) out[j].case_j = j + 1;
    std::array<std::uint64_t, 4> declared{};

    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::uint64_t vals[4];
        std::size_t pos = 0;
        for (int f = 0; f < 4; ++f) {
            const std::size_t end = (f < 3) ? line.find(',', pos) : line.size();
            if (end == std::string::npos) throw std::runtime_error("bad row in " + path + " line " + std::to_string(lineno));
            vals[f] = std::stoull(line.substr(pos, end - pos));
            pos = end + 1;
        }
        const auto [j, q, c, t] = std::tuple{vals[0], vals[1], vals[2], vals[3]};
        if (j < 1 || j > 4 || q == 0) throw std::runtime_error("bad row in " + path + " line " + std::to_string(lineno));
        Histogram& h = out[j - 1];
        if (h.counts.count(q)) throw std::runtime_error("duplicate q in " + path + " line " + std::to_string(lineno));
        h.counts.emplace(q, c);
        h.total += c;
        if (declared[j - 1] != 0 && declared[j - 1] != t)
            throw std::runtime_error("inconsistent totals in " + path + " line " + std::to_string(lineno));
        declared[j - 1] = t;
    }
    for (int j = 0; j < 4; ++j)
        if (declared[j] != 0 && declared[j] != out[j].total)
            throw std::runtime_error("totals do not match counts in " + path);
    return out;
}

}  // namespace unitfreq
