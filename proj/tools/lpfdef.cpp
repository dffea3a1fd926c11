// lpfdef: command-line driver for the spherical-harmonic low-pass defense
// pipeline. Exit codes: 0 success, 2 partial failure, 64 usage, 74 IO.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "lpf/cloud_io.hpp"
#include "lpf/digest.hpp"
#include "lpf/errors.hpp"
#include "lpf/freq_analysis.hpp"
#include "lpf/pipeline.hpp"
#include "lpf/preprocess.hpp"
#include "lpf/rng.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPartial = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct FilterFlags {
    double gaussian_s = 0.0;
    int box_cutoff = -1;
    bool has_gaussian = false;
    bool has_box = false;

    void attach(CLI::App* cmd, bool required) {
        auto* g = cmd->add_option("--gaussian-s", gaussian_s,
                                  "Gaussian degree filter: weight exp(-l^2/(2 S^2))");
        auto* b = cmd->add_option("--box-cutoff", box_cutoff,
                                  "Box degree filter: keep degrees l <= cutoff");
        g->excludes(b);
        b->excludes(g);
        cmd->parse_complete_callback([this, cmd, required, g, b]() {
            has_gaussian = g->count() > 0;
            has_box = b->count() > 0;
            if (required && !has_gaussian && !has_box) {
                throw CLI::RequiredError(cmd->get_name() +
                                         " needs --gaussian-s or --box-cutoff");
            }
        });
    }

    bool engaged() const { return has_gaussian || has_box; }

    lpf::FilterSpec spec() const {
        return has_box ? lpf::FilterSpec::box(box_cutoff) : lpf::FilterSpec::gaussian(gaussian_s);
    }
};

/// Manifest for the single-file commands; mirrors the dataset schema.
struct MiniManifest {
    ordered_json job;
    ordered_json outputs = ordered_json::array();
    ordered_json failures = ordered_json::array();

    void add_output(const fs::path& src, const fs::path& dst, const std::string& mode,
                    std::size_t n_points) {
        outputs.push_back({{"src", src.generic_string()},
                           {"dst", dst.generic_string()},
                           {"mode", mode},
                           {"digest", lpf::sha256_file(dst)},
                           {"n_points", n_points}});
    }

    void add_failure(const fs::path& src, const std::string& error) {
        failures.push_back({{"src", src.generic_string()}, {"error", error}});
    }

    void write(const fs::path& path) const {
        ordered_json j;
        j["job"] = job;
        j["outputs"] = outputs;
        j["failures"] = failures;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw lpf::IoError("cannot open " + path.string() + " for writing");
        }
        const std::string body = j.dump(2) + "\n";
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        if (!out) {
            throw lpf::IoError("short write to " + path.string());
        }
    }
};

lpf::CloudFormat output_format_for(const fs::path& out, const std::string& format_flag) {
    if (!format_flag.empty()) {
        return lpf::format_from_name(format_flag);
    }
    return lpf::format_from_extension(out);
}

ordered_json filter_flags_json(const FilterFlags& f) {
    if (f.has_box) {
        return {{"kind", "box"}, {"cutoff", f.box_cutoff}};
    }
    return {{"kind", "gaussian"}, {"s", f.gaussian_s}};
}

// ---------------------------------------------------------------------------
// filter

struct FilterOpts {
    std::string in, out, format, manifest;
    FilterFlags filter;
    int lmax = 100;
    std::size_t n_target = 1024;
    std::uint64_t seed = 0;
    int threads = 0;
};

int run_filter(const FilterOpts& opt) {
    lpf::build_grid(opt.lmax);                     // validate before any output
    lpf::degree_weights(opt.filter.spec(), opt.lmax);

    if (fs::is_directory(opt.in)) {
        lpf::DefenseDatasetJob job;
        job.input_root = opt.in;
        job.output_root = opt.out;
        job.mode = lpf::DefenseMode::Lpf1;
        job.filter = opt.filter.spec();
        job.bandlimit = opt.lmax;
        job.n_target = opt.n_target;
        job.seed = opt.seed;
        job.threads = opt.threads;
        job.output_format = opt.format.empty() ? lpf::CloudFormat::Pclb
                                               : lpf::format_from_name(opt.format);
        const lpf::DatasetManifest m = lpf::make_defense_dataset(job);
        std::cout << "filtered " << m.outputs.size() << " cloud(s), " << m.failures.size()
                  << " failure(s)\n";
        return m.failures.empty() ? kExitOk : kExitPartial;
    }

    const fs::path out_path(opt.out);
    const lpf::CloudFormat fmt = output_format_for(out_path, opt.format);
    MiniManifest manifest;
    manifest.job = {{"command", "filter"},
                    {"filter", filter_flags_json(opt.filter)},
                    {"bandlimit", opt.lmax},
                    {"n_target", opt.n_target},
                    {"seed", opt.seed},
                    {"output_format", lpf::format_name(fmt)}};
    int exit_code = kExitOk;
    try {
        const lpf::PointCloud cloud = lpf::load_cloud(opt.in);
        const std::size_t n = opt.n_target == 0 ? cloud.size() : opt.n_target;
        const lpf::PointCloud lp =
            lpf::lowpass_cloud(cloud, opt.filter.spec(), opt.lmax, n, opt.seed);
        if (out_path.has_parent_path()) {
            fs::create_directories(out_path.parent_path());
        }
        lpf::save_cloud(lp, out_path, fmt);
        manifest.add_output(opt.in, out_path, "lp", lp.size());
    } catch (const lpf::IoError& e) {
        manifest.add_failure(opt.in, e.what());
        std::cerr << "io error: " << e.what() << "\n";
        exit_code = kExitIo;
    } catch (const lpf::Error& e) {
        manifest.add_failure(opt.in, e.what());
        std::cerr << "error: " << e.what() << "\n";
        exit_code = kExitPartial;
    }
    const fs::path mpath =
        opt.manifest.empty() ? fs::path(opt.out + ".manifest.json") : fs::path(opt.manifest);
    manifest.write(mpath);
    return exit_code;
}

// ---------------------------------------------------------------------------
// dataset

struct DatasetOpts {
    std::string in, out, mode = "lpf1", format = "pclb";
    FilterFlags filter;
    int lmax = 100;
    std::size_t n_target = 1024;
    std::uint64_t seed = 0;
    int threads = 0;
};

int run_dataset(const DatasetOpts& opt) {
    lpf::build_grid(opt.lmax);
    lpf::degree_weights(opt.filter.spec(), opt.lmax);

    lpf::DefenseDatasetJob job;
    job.input_root = opt.in;
    job.output_root = opt.out;
    job.mode = opt.mode == "lpf2" ? lpf::DefenseMode::Lpf2 : lpf::DefenseMode::Lpf1;
    job.filter = opt.filter.spec();
    job.bandlimit = opt.lmax;
    job.n_target = opt.n_target;
    job.seed = opt.seed;
    job.threads = opt.threads;
    job.output_format = lpf::format_from_name(opt.format);

    if (lpf::discover_clouds(job.input_root).empty()) {
        std::cerr << "error: no cloud files under " << job.input_root << "\n";
        return kExitUsage;
    }

    const auto t0 = std::chrono::steady_clock::now();
    const lpf::DatasetManifest m = lpf::make_defense_dataset(job);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << lpf::defense_mode_name(job.mode) << ": " << m.outputs.size() << " output(s), "
              << m.failures.size() << " failure(s), " << secs << " s\n";
    return m.failures.empty() ? kExitOk : kExitPartial;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeOpts {
    std::string org, adv;
    std::string out_triangle = "dis_triangle.csv";
    std::string out_marginal = "dis_marginal.csv";
    int lmax = 16;
    double eps = lpf::kDefaultDisCoefEps;
};

int run_analyze(const AnalyzeOpts& opt) {
    lpf::build_grid(opt.lmax);
    const std::vector<fs::path> rels = lpf::discover_clouds(opt.org);
    if (rels.empty()) {
        std::cerr << "error: no cloud files under " << opt.org << "\n";
        return kExitUsage;
    }
    std::vector<fs::path> missing;
    for (const fs::path& rel : rels) {
        if (!fs::exists(fs::path(opt.adv) / rel)) {
            missing.push_back(rel);
        }
    }
    if (!missing.empty()) {
        for (const fs::path& rel : missing) {
            std::cerr << "missing pair: " << rel.generic_string() << "\n";
        }
        return kExitPartial;
    }

    std::vector<lpf::PointCloud> originals, adversarials;
    originals.reserve(rels.size());
    adversarials.reserve(rels.size());
    for (const fs::path& rel : rels) {
        originals.push_back(lpf::load_cloud(fs::path(opt.org) / rel));
        adversarials.push_back(lpf::load_cloud(fs::path(opt.adv) / rel));
    }
    const lpf::DisCoefMap map = lpf::dis_coef(originals, adversarials, opt.lmax, opt.eps);
    lpf::export_triangle(map, opt.out_triangle);
    lpf::export_degree_marginal(map, opt.out_marginal);

    MiniManifest manifest;
    manifest.job = {{"command", "analyze"},
                    {"bandlimit", opt.lmax},
                    {"eps_rel", opt.eps},
                    {"n_pairs", map.n_pairs}};
    manifest.add_output(opt.org, opt.out_triangle, "triangle", map.dis.size());
    manifest.add_output(opt.org, opt.out_marginal, "marginal",
                        static_cast<std::size_t>(map.bandlimit) + 1);
    manifest.write(opt.out_triangle + ".manifest.json");
    std::cout << "analyzed " << map.n_pairs << " pair(s) at L=" << map.bandlimit << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessOpts {
    std::string in, out, format, manifest;
    FilterFlags filter;
    int sor_k = 0;
    double sor_alpha = 0.0;
    std::size_t srs_drop = 0;
    bool has_sor = false;
    bool has_srs = false;
    int lmax = 100;
    std::size_t n_target = 0;  // 0: keep the size entering the low-pass stage
    std::uint64_t seed = 0;
};

int run_preprocess(const PreprocessOpts& opt) {
    if (!opt.has_sor && !opt.has_srs && !opt.filter.engaged()) {
        std::cerr << "error: preprocess needs at least one of --sor-k/--sor-alpha, "
                     "--srs-drop, --gaussian-s, --box-cutoff\n";
        return kExitUsage;
    }
    if (opt.filter.engaged()) {
        lpf::build_grid(opt.lmax);
        lpf::degree_weights(opt.filter.spec(), opt.lmax);
    }

    const fs::path out_path(opt.out);
    const lpf::CloudFormat fmt = output_format_for(out_path, opt.format);
    MiniManifest manifest;
    manifest.job = {{"command", "preprocess"}, {"seed", opt.seed}};
    if (opt.has_sor) {
        manifest.job["sor"] = {{"k", opt.sor_k}, {"alpha", opt.sor_alpha}};
    }
    if (opt.has_srs) {
        manifest.job["srs_drop"] = opt.srs_drop;
    }
    if (opt.filter.engaged()) {
        manifest.job["filter"] = filter_flags_json(opt.filter);
        manifest.job["bandlimit"] = opt.lmax;
        manifest.job["n_target"] = opt.n_target;
    }

    int exit_code = kExitOk;
    try {
        lpf::PointCloud cloud = lpf::load_cloud(opt.in);
        // fixed stage order: SOR, then SRS, then the low-pass transform
        if (opt.has_sor) {
            cloud = lpf::sor(cloud, {opt.sor_k, opt.sor_alpha});
        }
        if (opt.has_srs) {
            cloud = lpf::srs(cloud, opt.srs_drop, opt.seed ^ lpf::fnv1a64("srs"));
        }
        if (opt.filter.engaged()) {
            const std::size_t n = opt.n_target == 0 ? cloud.size() : opt.n_target;
            cloud = lpf::lowpass_cloud(cloud, opt.filter.spec(), opt.lmax, n, opt.seed);
        }
        if (out_path.has_parent_path()) {
            fs::create_directories(out_path.parent_path());
        }
        lpf::save_cloud(cloud, out_path, fmt);
        manifest.add_output(opt.in, out_path, "preprocessed", cloud.size());
        std::cout << "preprocess: " << cloud.size() << " point(s) -> " << opt.out << "\n";
    } catch (const lpf::IoError& e) {
        manifest.add_failure(opt.in, e.what());
        std::cerr << "io error: " << e.what() << "\n";
        exit_code = kExitIo;
    } catch (const lpf::Error& e) {
        manifest.add_failure(opt.in, e.what());
        std::cerr << "error: " << e.what() << "\n";
        exit_code = kExitPartial;
    }
    const fs::path mpath =
        opt.manifest.empty() ? fs::path(opt.out + ".manifest.json") : fs::path(opt.manifest);
    manifest.write(mpath);
    return exit_code;
}

// ---------------------------------------------------------------------------
// perturb

struct PerturbOpts {
    std::string in, out, format, manifest;
    double shift_sigma = -1.0;
    std::size_t add_count = 0;
    double radius_min = 0.0, radius_max = 0.0;
    std::size_t drop_count = 0;
    bool has_shift = false, has_add = false, has_drop = false;
    std::uint64_t seed = 0;
};

int run_perturb(const PerturbOpts& opt) {
    const int kinds = (opt.has_shift ? 1 : 0) + (opt.has_add ? 1 : 0) + (opt.has_drop ? 1 : 0);
    if (kinds != 1) {
        std::cerr << "error: perturb needs exactly one of --shift-sigma, --add-outliers, "
                     "--drop\n";
        return kExitUsage;
    }
    lpf::PerturbSpec spec;
    if (opt.has_shift) {
        spec = lpf::PerturbSpec::shift_gaussian(opt.shift_sigma, opt.seed);
    } else if (opt.has_add) {
        spec = lpf::PerturbSpec::add_outliers(opt.add_count, opt.radius_min, opt.radius_max,
                                              opt.seed);
    } else {
        spec = lpf::PerturbSpec::drop_random(opt.drop_count, opt.seed);
    }

    const fs::path out_path(opt.out);
    const lpf::CloudFormat fmt = output_format_for(out_path, opt.format);
    MiniManifest manifest;
    manifest.job = {{"command", "perturb"}, {"seed", opt.seed}};
    int exit_code = kExitOk;
    try {
        const lpf::PointCloud cloud = lpf::load_cloud(opt.in);
        const lpf::PointCloud out = lpf::perturb(cloud, spec);
        if (out_path.has_parent_path()) {
            fs::create_directories(out_path.parent_path());
        }
        lpf::save_cloud(out, out_path, fmt);
        manifest.add_output(opt.in, out_path, "perturbed", out.size());
        std::cout << "perturb: " << cloud.size() << " -> " << out.size() << " point(s)\n";
    } catch (const lpf::IoError& e) {
        manifest.add_failure(opt.in, e.what());
        std::cerr << "io error: " << e.what() << "\n";
        exit_code = kExitIo;
    } catch (const lpf::Error& e) {
        manifest.add_failure(opt.in, e.what());
        std::cerr << "error: " << e.what() << "\n";
        exit_code = kExitPartial;
    }
    const fs::path mpath =
        opt.manifest.empty() ? fs::path(opt.out + ".manifest.json") : fs::path(opt.manifest);
    manifest.write(mpath);
    return exit_code;
}

// ---------------------------------------------------------------------------
// info

int run_info(const std::string& in) {
    const lpf::PointCloud cloud = lpf::load_cloud(in);
    const lpf::Centroid c = lpf::centroid_of(cloud);
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (const lpf::Vec3& p : cloud.points) {
        const double r = (p - c).norm();
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    std::cout << "file:          " << in << "\n"
              << "points:        " << cloud.size() << "\n"
              << "label:         " << cloud.label.value_or("(none)") << "\n"
              << "centroid:      " << c.x << " " << c.y << " " << c.z << "\n"
              << "radius range:  [" << rmin << ", " << rmax << "] about centroid\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spherical-harmonic low-pass filtering and frequency analysis "
                 "for 3D point clouds"};
    app.require_subcommand(1);

    FilterOpts filter_opts;
    auto* cmd_filter = app.add_subcommand("filter", "Low-pass filter one cloud or a tree");
    cmd_filter->add_option("--in", filter_opts.in, "Input cloud file or dataset root")
        ->required();
    cmd_filter->add_option("--out", filter_opts.out, "Output file or root")->required();
    filter_opts.filter.attach(cmd_filter, true);
    cmd_filter->add_option("--lmax", filter_opts.lmax, "Harmonic bandlimit L")
        ->capture_default_str();
    cmd_filter->add_option("--n", filter_opts.n_target,
                           "Points per output cloud (0: keep input size)")
        ->capture_default_str();
    cmd_filter->add_option("--seed", filter_opts.seed, "Resampling seed")
        ->envname("LPF_SEED");
    cmd_filter->add_option("--threads", filter_opts.threads, "Worker threads (0: all cores)")
        ->envname("LPF_THREADS");
    cmd_filter->add_option("--format", filter_opts.format, "Output format: xyz|ply|off|pclb");
    cmd_filter->add_option("--manifest", filter_opts.manifest, "Manifest path (single-file mode)");

    DatasetOpts dataset_opts;
    auto* cmd_dataset = app.add_subcommand("dataset", "Generate an LPF1/LPF2 defense dataset");
    cmd_dataset->add_option("--in", dataset_opts.in, "Input dataset root")->required();
    cmd_dataset->add_option("--out", dataset_opts.out, "Output dataset root")->required();
    cmd_dataset->add_option("--mode", dataset_opts.mode, "lpf1 (low-pass only) or lpf2 (mixture)")
        ->check(CLI::IsMember({"lpf1", "lpf2"}))
        ->capture_default_str();
    dataset_opts.filter.attach(cmd_dataset, true);
    cmd_dataset->add_option("--lmax", dataset_opts.lmax, "Harmonic bandlimit L")
        ->capture_default_str();
    cmd_dataset->add_option("--n", dataset_opts.n_target, "Points per output cloud")
        ->capture_default_str();
    cmd_dataset->add_option("--seed", dataset_opts.seed, "Job seed")->envname("LPF_SEED");
    cmd_dataset->add_option("--threads", dataset_opts.threads, "Worker threads (0: all cores)")
        ->envname("LPF_THREADS");
    cmd_dataset->add_option("--format", dataset_opts.format, "Output format: xyz|ply|off|pclb")
        ->check(CLI::IsMember({"xyz", "ply", "off", "pclb"}))
        ->capture_default_str();

    AnalyzeOpts analyze_opts;
    auto* cmd_analyze =
        app.add_subcommand("analyze", "Dis_Coef frequency analysis of two aligned trees");
    cmd_analyze->add_option("--org", analyze_opts.org, "Tree of original clouds")->required();
    cmd_analyze->add_option("--adv", analyze_opts.adv, "Tree of perturbed clouds")->required();
    cmd_analyze->add_option("--lmax", analyze_opts.lmax, "Harmonic bandlimit L")
        ->capture_default_str();
    cmd_analyze->add_option("--eps", analyze_opts.eps, "Relative denominator guard")
        ->capture_default_str();
    cmd_analyze->add_option("--out-triangle", analyze_opts.out_triangle, "Triangle CSV path")
        ->capture_default_str();
    cmd_analyze->add_option("--out-marginal", analyze_opts.out_marginal, "Marginal CSV path")
        ->capture_default_str();

    PreprocessOpts pre_opts;
    auto* cmd_pre = app.add_subcommand(
        "preprocess", "Input-restoration chain: SOR, then SRS, then low-pass");
    cmd_pre->add_option("--in", pre_opts.in, "Input cloud file")->required();
    cmd_pre->add_option("--out", pre_opts.out, "Output cloud file")->required();
    auto* sor_k = cmd_pre->add_option("--sor-k", pre_opts.sor_k, "SOR neighbor count");
    auto* sor_a =
        cmd_pre->add_option("--sor-alpha", pre_opts.sor_alpha, "SOR std-dev multiplier");
    auto* srs_n = cmd_pre->add_option("--srs-drop", pre_opts.srs_drop, "SRS points to drop");
    pre_opts.filter.attach(cmd_pre, false);
    cmd_pre->add_option("--lmax", pre_opts.lmax, "Harmonic bandlimit L")->capture_default_str();
    cmd_pre->add_option("--n", pre_opts.n_target,
                        "Points after low-pass (0: keep stage input size)")
        ->capture_default_str();
    cmd_pre->add_option("--seed", pre_opts.seed, "Seed")->envname("LPF_SEED");
    cmd_pre->add_option("--format", pre_opts.format, "Output format override");
    cmd_pre->add_option("--manifest", pre_opts.manifest, "Manifest path");
    cmd_pre->parse_complete_callback([&pre_opts, sor_k, sor_a, srs_n]() {
        pre_opts.has_sor = sor_k->count() > 0 || sor_a->count() > 0;
        if (sor_k->count() == 0) {
            pre_opts.sor_k = 2;  // paper defaults
        }
        if (sor_a->count() == 0) {
            pre_opts.sor_alpha = 1.1;
        }
        pre_opts.has_srs = srs_n->count() > 0;
    });

    PerturbOpts pert_opts;
    auto* cmd_pert = app.add_subcommand("perturb", "Synthetic shift/add/drop perturbations");
    cmd_pert->add_option("--in", pert_opts.in, "Input cloud file")->required();
    cmd_pert->add_option("--out", pert_opts.out, "Output cloud file")->required();
    auto* p_shift = cmd_pert->add_option("--shift-sigma", pert_opts.shift_sigma,
                                         "Gaussian shift std dev per coordinate");
    auto* p_add =
        cmd_pert->add_option("--add-outliers", pert_opts.add_count, "Outlier points to append");
    cmd_pert->add_option("--radius-min", pert_opts.radius_min, "Outlier radius lower bound");
    cmd_pert->add_option("--radius-max", pert_opts.radius_max, "Outlier radius upper bound");
    auto* p_drop = cmd_pert->add_option("--drop", pert_opts.drop_count, "Random points to drop");
    cmd_pert->add_option("--seed", pert_opts.seed, "Seed")->envname("LPF_SEED");
    cmd_pert->add_option("--format", pert_opts.format, "Output format override");
    cmd_pert->add_option("--manifest", pert_opts.manifest, "Manifest path");
    cmd_pert->parse_complete_callback([&pert_opts, p_shift, p_add, p_drop]() {
        pert_opts.has_shift = p_shift->count() > 0;
        pert_opts.has_add = p_add->count() > 0;
        pert_opts.has_drop = p_drop->count() > 0;
    });

    std::string info_in;
    auto* cmd_info = app.add_subcommand("info", "Print basic facts about a cloud file");
    cmd_info->add_option("--in", info_in, "Input cloud file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_filter->parsed()) {
            return run_filter(filter_opts);
        }
        if (cmd_dataset->parsed()) {
            return run_dataset(dataset_opts);
        }
        if (cmd_analyze->parsed()) {
            return run_analyze(analyze_opts);
        }
        if (cmd_pre->parsed()) {
            return run_preprocess(pre_opts);
        }
        if (cmd_pert->parsed()) {
            return run_perturb(pert_opts);
        }
        if (cmd_info->parsed()) {
            return run_info(info_in);
        }
    } catch (const lpf::InvalidBandlimit& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lpf::InvalidFilterParam& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lpf::InvalidSpec& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const lpf::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const lpf::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPartial;
    }
    return kExitUsage;
}
