// biokey: derive a key from a fingerprint image and an iris image.
//
//   biokey fingerprint <fingerprint.pgm> [-o DIR] [--dump-stages]
//   biokey iris <eye.pgm> [-o DIR] [--dump-stages]
//   biokey fuse <minutiae.txt> <iris_features.txt> [--seed N] [-o DIR]
//   biokey keygen <template.txt> [--key-bits K] [-o DIR]
//   biokey pipeline <fingerprint.pgm> <eye.pgm> [--seed N] [--key-bits K] [-o DIR] [--dump-stages]

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <future>
#include <iostream>
#include <optional>
#include <string>

#include "biokey/formats.hpp"
#include "biokey/image.hpp"
#include "biokey/pipeline.hpp"

namespace fs = std::filesystem;
using namespace biokey;

namespace {

enum ExitCode : int {
  kOk = 0,
  kGeneric = 1,
  kFingerprintFailed = 2,
  kIrisFailed = 3,
  kFusionFailed = 4,
};

// Carries a stage-specific exit code up to main().
struct StageFailure {
  int code;
  std::string message;
};

struct Options {
  fs::path fingerprint_path;
  fs::path iris_path;
  fs::path minutiae_path;
  fs::path features_path;
  fs::path template_path;
  fs::path out_dir = ".";
  std::uint64_t seed = 1;
  std::size_t key_bits = keygen::kDefaultKeyBits;
  bool dump_stages = false;
  bool ridge_bright = false;
  double segmentation_threshold = 0.0;  // 0 = automatic
  pipeline::FingerprintConfig fingerprint;
  pipeline::IrisConfig iris;
};

void add_out(CLI::App* cmd, Options& o) {
  cmd->add_option("-o,--out", o.out_dir, "Output directory (created if missing)");
}

void add_dump(CLI::App* cmd, Options& o) {
  cmd->add_flag("--dump-stages", o.dump_stages, "Write a PGM for every intermediate stage");
}

void add_fingerprint_tunables(CLI::App* cmd, Options& o) {
  auto& f = o.fingerprint;
  cmd->add_option("--segmentation-threshold", o.segmentation_threshold,
                  "Block gradient-deviation threshold; 0 selects 0.05 x the peak block value");
  cmd->add_option("--orientation-block", f.orientation_block, "Orientation block size in pixels")
      ->check(CLI::Range(3, 256));
  cmd->add_option("--lowpass-sigma", f.lowpass_sigma, "Gaussian low-pass sigma")->check(CLI::PositiveNumber);
  cmd->add_option("--gabor-frequency", f.gabor.frequency, "Gabor ridge frequency, cycles/pixel")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--gabor-sigma-x", f.gabor.sigma_x, "Gabor envelope sigma across ridges")->check(CLI::PositiveNumber);
  cmd->add_option("--gabor-sigma-y", f.gabor.sigma_y, "Gabor envelope sigma along ridges")->check(CLI::PositiveNumber);
  cmd->add_flag("--ridge-bright", o.ridge_bright, "Treat bright pixels as ridges when binarizing");
  cmd->add_option("--border-margin", f.border_margin, "Drop minutiae closer than this to the mask border")
      ->check(CLI::NonNegativeNumber);
}

void add_iris_tunables(CLI::App* cmd, Options& o) {
  auto& i = o.iris;
  auto& l = i.localization;
  cmd->add_option("--pupil-rmin", l.pupil_rmin, "Smallest pupil radius searched")->check(CLI::PositiveNumber);
  cmd->add_option("--pupil-rmax", l.pupil_rmax, "Largest pupil radius searched")->check(CLI::PositiveNumber);
  cmd->add_option("--iris-rmin", l.iris_rmin, "Smallest iris radius searched")->check(CLI::PositiveNumber);
  cmd->add_option("--iris-rmax", l.iris_rmax, "Largest iris radius searched")->check(CLI::PositiveNumber);
  cmd->add_option("--canny-sigma", l.canny_sigma, "Canny smoothing sigma")->check(CLI::PositiveNumber);
  cmd->add_option("--canny-high", l.canny_high_fraction, "Canny high threshold, fraction of peak gradient")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--canny-low-ratio", l.canny_low_ratio, "Canny low threshold as a fraction of the high one")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--meridian-angle", l.meridian_half_angle_deg,
                  "Half-angle (degrees) around the horizontal meridian used for the iris boundary")
      ->check(CLI::Range(1.0, 90.0));
  cmd->add_option("--eyelash-threshold", i.eyelash_threshold, "Pixels darker than this are eyelashes")
      ->check(CLI::Range(0, 255));
  cmd->add_option("--reflection-threshold", i.reflection_threshold, "Pixels brighter than this are reflections")
      ->check(CLI::Range(0, 255));
  cmd->add_option("--radial-res", i.radial_res, "Normalized iris radial resolution")->check(CLI::Range(2, 4096));
  cmd->add_option("--angular-res", i.angular_res, "Normalized iris angular resolution")->check(CLI::Range(8, 65536));
  cmd->add_option("--log-gabor-f0", i.log_gabor_f0, "Log-Gabor center frequency, cycles/sample")
      ->check(CLI::Range(0.0, 0.5));
  cmd->add_option("--log-gabor-sigma-ratio", i.log_gabor_sigma_ratio, "Log-Gabor bandwidth ratio sigma/f0")
      ->check(CLI::Range(0.0, 1.0));
}

void add_seed(CLI::App* cmd, Options& o) { cmd->add_option("--seed", o.seed, "Shuffle seed (unsigned 64-bit)"); }

void add_key_bits(CLI::App* cmd, Options& o) {
  cmd->add_option("--key-bits", o.key_bits, "Key length in bits")->check(CLI::PositiveNumber);
}

void finalize(Options& o) {
  if (o.segmentation_threshold > 0.0) o.fingerprint.segmentation_threshold = o.segmentation_threshold;
  o.fingerprint.polarity = o.ridge_bright ? fingerprint::RidgePolarity::Bright : fingerprint::RidgePolarity::Dark;
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

template <typename F>
auto run_stage(int code, const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageFailure{code, std::string(what) + ": " + e.what()};
  } catch (const std::exception& e) {
    throw StageFailure{code, std::string(what) + ": " + e.what()};
  }
}

pipeline::FingerprintStages fingerprint_stage(const Options& o) {
  return run_stage(kFingerprintFailed, "fingerprint stage failed", [&] {
    return pipeline::run_fingerprint(load_pgm(o.fingerprint_path), o.fingerprint);
  });
}

struct IrisRun {
  GrayImage input;
  pipeline::IrisStages stages;
};

IrisRun iris_stage(const Options& o) {
  return run_stage(kIrisFailed, "iris stage failed", [&] {
    auto img = load_pgm(o.iris_path);
    auto stages = pipeline::run_iris(img, o.iris);
    return IrisRun{std::move(img), std::move(stages)};
  });
}

void dump_fingerprint(const fs::path& dir, const pipeline::FingerprintStages& s) {
  save_pgm(s.equalized, dir / "fingerprint_equalized.pgm");
  save_pgm(s.wiener, dir / "fingerprint_wiener.pgm");
  GrayImage segmented = s.wiener;
  for (int y = 0; y < segmented.height(); ++y) {
    for (int x = 0; x < segmented.width(); ++x) {
      if (!s.mask.foreground(x, y)) segmented(x, y) = 0;
    }
  }
  save_pgm(segmented, dir / "fingerprint_segmented.pgm");
  save_pgm(s.enhanced, dir / "fingerprint_enhanced.pgm");
  GrayImage skeleton(s.skeleton.width(), s.skeleton.height(), 255);
  for (int y = 0; y < skeleton.height(); ++y) {
    for (int x = 0; x < skeleton.width(); ++x) {
      if (s.skeleton(x, y)) skeleton(x, y) = 0;
    }
  }
  save_pgm(skeleton, dir / "fingerprint_thinned.pgm");
  GrayImage overlay = skeleton;
  for (auto& v : overlay.pixels()) v = v ? 160 : 0;
  save_pgm(pipeline::draw_minutiae(overlay, s.minutiae), dir / "fingerprint_minutiae.pgm");
}

void dump_iris(const fs::path& dir, const IrisRun& run) {
  const auto& s = run.stages;
  save_pgm(to_gray(s.edges), dir / "iris_edges.pgm");
  save_pgm(pipeline::draw_geometry(run.input, s.geometry), dir / "iris_boundaries.pgm");
  save_pgm(pipeline::draw_noise(run.input, s.eyelids), dir / "iris_eyelids.pgm");
  save_pgm(pipeline::draw_noise(pipeline::draw_geometry(run.input, s.geometry), s.noise), dir / "iris_segmented.pgm");
  save_pgm(pipeline::render_normalized(s.normalized), dir / "iris_normalized.pgm");
  save_pgm(to_gray(s.normalized.valid), dir / "iris_normalized_mask.pgm");
}

std::string iris_features_text(const iris::IrisFeatureVectors& f) {
  auto [i1, i2] = fusion::quantize_iris(f.real, f.imag);
  return formats::format_iris_features(i1, i2);
}

void warn_entropy(const fusion::TemplateVector& bt, std::size_t k) {
  const auto report = keygen::entropy_report(bt, k);
  if (report.padded()) {
    std::cerr << "warning: template has only " << report.distinct << " distinct components; the last "
              << report.fill_length << " of " << report.key_bits << " key bits repeat the mean-fill parity\n";
  }
}

keygen::KeyBits write_key(const Options& o, const fusion::TemplateVector& bt) {
  auto key = run_stage(kFusionFailed, "key generation failed", [&] { return keygen::generate_key(bt, o.key_bits); });
  warn_entropy(bt, o.key_bits);
  formats::write_text(o.out_dir / "key.txt", formats::format_key_binary(key));
  formats::write_text(o.out_dir / "key.hex", formats::format_key_hex(key));
  return key;
}

int cmd_fingerprint(const Options& o) {
  const auto stages = fingerprint_stage(o);
  ensure_out_dir(o.out_dir);
  formats::write_text(o.out_dir / "minutiae.txt", formats::format_minutiae(stages.minutiae));
  if (o.dump_stages) dump_fingerprint(o.out_dir, stages);
  std::cout << stages.minutiae.size() << " minutiae -> " << (o.out_dir / "minutiae.txt").string() << "\n";
  return kOk;
}

int cmd_iris(const Options& o) {
  const auto run = iris_stage(o);
  ensure_out_dir(o.out_dir);
  formats::write_text(o.out_dir / "iris_features.txt", iris_features_text(run.stages.features));
  if (o.dump_stages) dump_iris(o.out_dir, run);
  const auto& g = run.stages.geometry;
  std::cout << "pupil (" << g.pupil().cx << ", " << g.pupil().cy << ") r=" << g.pupil().r << "; iris ("
            << g.iris().cx << ", " << g.iris().cy << ") r=" << g.iris().r << "; " << run.stages.features.size()
            << " samples -> " << (o.out_dir / "iris_features.txt").string() << "\n";
  return kOk;
}

int cmd_fuse(const Options& o) {
  const auto bt = run_stage(kFusionFailed, "fusion failed", [&] {
    const auto minutiae = formats::parse_minutiae(formats::read_text(o.minutiae_path));
    auto [i1, i2] = formats::parse_iris_features(formats::read_text(o.features_path));
    std::vector<long long> xs, ys;
    for (const auto& m : minutiae) {
      xs.push_back(m.x);
      ys.push_back(m.y);
    }
    const auto features = fusion::FeatureVectors::from_coordinates(xs, ys, std::move(i1), std::move(i2));
    return fusion::fuse(features, fusion::ShuffleSeed{o.seed});
  });
  ensure_out_dir(o.out_dir);
  formats::write_text(o.out_dir / "template.txt", formats::format_template(bt));
  std::cout << bt.size() << " template components -> " << (o.out_dir / "template.txt").string() << "\n";
  return kOk;
}

int cmd_keygen(const Options& o) {
  const auto bt = run_stage(kFusionFailed, "key generation failed",
                            [&] { return formats::parse_template(formats::read_text(o.template_path)); });
  ensure_out_dir(o.out_dir);
  const auto key = write_key(o, bt);
  std::cout << key.to_hex() << "\n";
  return kOk;
}

int cmd_pipeline(const Options& o) {
  // The two modalities are independent; outputs are written once both finish.
  auto iris_future = std::async(std::launch::async, [&] { return iris_stage(o); });
  std::optional<pipeline::FingerprintStages> fp;
  try {
    fp = fingerprint_stage(o);
  } catch (...) {
    try {
      iris_future.get();
    } catch (...) {
    }
    throw;
  }
  const auto iris_run = iris_future.get();

  const auto bt = run_stage(kFusionFailed, "fusion failed", [&] {
    const auto features = pipeline::assemble_features(fp->minutiae, iris_run.stages.features);
    return fusion::fuse(features, fusion::ShuffleSeed{o.seed});
  });

  ensure_out_dir(o.out_dir);
  formats::write_text(o.out_dir / "minutiae.txt", formats::format_minutiae(fp->minutiae));
  formats::write_text(o.out_dir / "iris_features.txt", iris_features_text(iris_run.stages.features));
  formats::write_text(o.out_dir / "template.txt", formats::format_template(bt));
  if (o.dump_stages) {
    dump_fingerprint(o.out_dir, *fp);
    dump_iris(o.out_dir, iris_run);
  }
  const auto key = write_key(o, bt);
  std::cout << fp->minutiae.size() << " minutiae, " << iris_run.stages.features.size() << " iris samples, "
            << bt.size() << " template components\n"
            << key.size() << "-bit key: " << key.to_hex() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derive a cryptographic key from a fingerprint and an iris image"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();
  Options o;

  auto* fp = app.add_subcommand("fingerprint", "Extract minutiae from a fingerprint PGM");
  fp->add_option("image", o.fingerprint_path, "Fingerprint image (binary PGM)")->required();
  add_out(fp, o);
  add_dump(fp, o);
  add_fingerprint_tunables(fp, o);

  auto* ir = app.add_subcommand("iris", "Extract log-Gabor texture features from an eye PGM");
  ir->add_option("image", o.iris_path, "Eye image (binary PGM)")->required();
  add_out(ir, o);
  add_dump(ir, o);
  add_iris_tunables(ir, o);

  auto* fu = app.add_subcommand("fuse", "Fuse minutiae and iris features into a template");
  fu->add_option("minutiae", o.minutiae_path, "minutiae.txt from the fingerprint command")->required();
  fu->add_option("features", o.features_path, "iris_features.txt from the iris command")->required();
  add_seed(fu, o);
  add_out(fu, o);

  auto* kg = app.add_subcommand("keygen", "Derive a key from a fused template");
  kg->add_option("template", o.template_path, "template.txt from the fuse command")->required();
  add_key_bits(kg, o);
  add_out(kg, o);

  auto* pl = app.add_subcommand("pipeline", "Run every stage from both images to the key");
  pl->add_option("fingerprint", o.fingerprint_path, "Fingerprint image (binary PGM)")->required();
  pl->add_option("iris", o.iris_path, "Eye image (binary PGM)")->required();
  add_seed(pl, o);
  add_key_bits(pl, o);
  add_out(pl, o);
  add_dump(pl, o);
  add_fingerprint_tunables(pl, o);
  add_iris_tunables(pl, o);

  CLI11_PARSE(app, argc, argv);
  finalize(o);

  try {
    if (fp->parsed()) return cmd_fingerprint(o);
    if (ir->parsed()) return cmd_iris(o);
    if (fu->parsed()) return cmd_fuse(o);
    if (kg->parsed()) return cmd_keygen(o);
    if (pl->parsed()) return cmd_pipeline(o);
  } catch (const StageFailure& f) {
    std::cerr << "biokey: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "biokey: " << e.what() << "\n";
    return kGeneric;
  }
  return kGeneric;
}
