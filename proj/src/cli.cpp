// Copyright 2026 The evkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evkit/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <ostream>
#include <stdexcept>

#include "evkit/errors.hpp"
#include "evkit/event_codec.hpp"
#include "evkit/event_filters.hpp"
#include "evkit/event_synth.hpp"
#include "evkit/freqmap.hpp"
#include "evkit/magnify.hpp"
#include "evkit/parallel.hpp"
#include "evkit/steerable.hpp"

namespace evkit::cli
{
namespace
{
namespace fs = std::filesystem;

std::string format(const char * fmt, auto... args)
{
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  return buf;
}

FlickerBand parse_band(const std::string & text)
{
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("band must be written lo:hi, got '" + text + "'");
  std::size_t used_lo = 0, used_hi = 0;
  FlickerBand b;
  try {
    b.lo_hz = std::stod(text.substr(0, colon), &used_lo);
    b.hi_hz = std::stod(text.substr(colon + 1), &used_hi);
  } catch (const std::exception &) {
    throw std::invalid_argument("band must be written lo:hi, got '" + text + "'");
  }
  if (used_lo != colon || used_hi != text.size() - colon - 1) {
    throw std::invalid_argument("band must be written lo:hi, got '" + text + "'");
  }
  validate(b);
  return b;
}

Rect parse_region(const std::string & text, SensorGeometry g)
{
  if (text.empty()) return {0, 0, g.width, g.height};
  unsigned x = 0, y = 0, w = 0, h = 0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%u,%u,%u,%u%c", &x, &y, &w, &h, &tail) != 4) {
    throw std::invalid_argument("region must be x,y,width,height");
  }
  return {x, y, w, h};
}

duration_us ms_to_us(double ms)
{
  if (!(ms > 0) || !std::isfinite(ms)) throw std::invalid_argument("durations must be positive");
  return static_cast<duration_us>(std::llround(ms * 1000.0));
}

Colormap parse_colormap(const std::string & s) { return s == "hsv" ? Colormap::Hsv : Colormap::Turbo; }

// Options shared by the frequency commands.
struct FreqOptions
{
  double window_ms = 20.0;
  std::string transition = "on-off";
  std::string estimator = "mean";
  double fmin = 1.0;
  double fmax = 5000.0;
  std::size_t min_intervals = 2;

  void attach(CLI::App * app)
  {
    app->add_option("--window-ms", window_ms, "Batch window in milliseconds")->capture_default_str();
    app->add_option("--transition", transition, "Hypertransition direction")
      ->check(CLI::IsMember({"on-off", "off-on"}))
      ->capture_default_str();
    app->add_option("--estimator", estimator, "Interval estimator")
      ->check(CLI::IsMember({"mean", "median"}))
      ->capture_default_str();
    app->add_option("--fmin", fmin, "Lowest reportable frequency (Hz)")->capture_default_str();
    app->add_option("--fmax", fmax, "Highest reportable frequency (Hz)")->capture_default_str();
    app->add_option("--min-intervals", min_intervals, "Intervals needed for an estimate")->capture_default_str();
  }

  FreqMapConfig config() const
  {
    FreqMapConfig c;
    c.window_us = ms_to_us(window_ms);
    c.transition = transition == "off-on" ? Transition::OffToOn : Transition::OnToOff;
    c.estimator = estimator == "median" ? Estimator::Median : Estimator::Mean;
    c.f_min_hz = fmin;
    c.f_max_hz = fmax;
    c.min_intervals = min_intervals;
    c.validate();
    return c;
  }
};

struct SensorOptions
{
  double threshold_on = 0.2;
  double threshold_off = 0.2;
  duration_us refractory_us = 0;
  duration_us jitter_us = 0;

  void attach(CLI::App * app)
  {
    app->add_option("--threshold-on", threshold_on, "ON contrast threshold (log intensity)")->capture_default_str();
    app->add_option("--threshold-off", threshold_off, "OFF contrast threshold (log intensity)")->capture_default_str();
    app->add_option("--refractory-us", refractory_us, "Pixel dead time")->capture_default_str();
    app->add_option("--jitter-us", jitter_us, "Uniform timestamp jitter")->capture_default_str();
  }
  SensorModel model() const { return {threshold_on, threshold_off, refractory_us}; }
};

class Runner
{
public:
  Runner(std::ostream & out, std::ostream & err) : out_(out), err_(err) {}

  int main(int argc, const char * const * argv);

private:
  void build(CLI::App & app);
  void warn(const std::vector<std::string> & warnings)
  {
    for (const auto & w : warnings) err_ << "warning: " << w << '\n';
  }
  EventStream load_events(const std::string & path)
  {
    std::vector<std::string> warnings;
    EventStream s = read_event_file(path, {}, &warnings);
    warn(warnings);
    return s;
  }

  void cmd_info();
  void cmd_convert();
  void cmd_synth_flicker();
  void cmd_synth_vibration();
  void cmd_synth_from_frames();
  void cmd_synth_moving_pattern();
  void cmd_filter(CLI::App & sub);
  void cmd_freqmap();
  void cmd_render();
  void cmd_histogram();
  void cmd_magnify();
  void cmd_measure();

  std::ostream & out_;
  std::ostream & err_;
  std::function<void()> action_;

  // Global.
  std::uint64_t seed_ = 0;
  int threads_ = 0;

  // Shared between subcommands; CLI11 binds each option to one variable.
  std::string input_;
  std::string out_path_;
  std::string csv_path_;
  std::string hist_path_;
  std::size_t bins_ = 20;
  std::string colormap_ = "turbo";
  FreqOptions freq_;
  SensorOptions sensor_;

  // convert
  std::uint32_t csv_width_ = 0, csv_height_ = 0;
  bool sort_ = false;

  // synth
  std::uint32_t width_ = 128, height_ = 128;
  std::string region_;
  double freq_hz_ = 100.0;
  std::string vib_band_ = "40:50";
  double duration_ms_ = 1000.0;
  double phase_deg_ = 0.0;
  double fps_ = 30.0;
  std::size_t n_frames_ = 90;
  std::string pattern_ = "blob";
  double amplitude_px_ = 0.2;
  double motion_hz_ = 5.0;
  double direction_deg_ = 0.0;
  double blob_sigma_ = 3.0;
  double period_px_ = 8.0;

  // filter
  std::vector<duration_us> stc_window_us_;
  bool keep_trail_ = false;
  std::vector<duration_us> refractory_us_;
  std::vector<double> erc_keps_;
  duration_us erc_window_us_ = 1000;
  std::vector<std::string> af_bands_;
  double af_window_ms_ = 50.0;
  std::string config_path_;

  // magnify / measure
  std::string band_;
  std::string band_from_;
  double m_ = 10.0;
  std::string filter_kind_ = "butterworth";
  std::size_t order_ = 2;
  std::size_t taps_ = 65;
  double sigma_ = 2.0;
  std::size_t orientations_ = 4;
  std::size_t octave_fraction_ = 1;
  bool amplify_lowpass_ = false;
  std::size_t reference_ = 0;
};

void Runner::build(CLI::App & app)
{
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", seed_, "Seed for randomized synthesis")->capture_default_str();
  app.add_option("--threads", threads_, "Worker thread cap (0 = runtime default)")->check(CLI::NonNegativeNumber);

  auto * info = app.add_subcommand("info", "Print geometry, counts and duration of an event file");
  info->add_option("input", input_, "Event file (.csv or .evs1)")->required();
  info->callback([this] { action_ = [this] { cmd_info(); }; });

  auto * convert = app.add_subcommand("convert", "Convert between CSV and EVS1");
  convert->add_option("input", input_, "Event file")->required();
  convert->add_option("--out", out_path_, "Output file; format from extension")->required();
  convert->add_option("--width", csv_width_, "Sensor width for CSV input (default: inferred)");
  convert->add_option("--height", csv_height_, "Sensor height for CSV input (default: inferred)");
  convert->add_flag("--sort", sort_, "Sort out-of-order CSV input instead of rejecting it");
  convert->callback([this] { action_ = [this] { cmd_convert(); }; });

  auto * synth = app.add_subcommand("synth", "Generate synthetic events or frames");
  synth->require_subcommand(1);
  synth->fallthrough();

  auto * flicker = synth->add_subcommand("flicker", "Square-wave flicker over a region");
  auto * vibration = synth->add_subcommand("vibration", "Patch of pixels with per-pixel random frequencies");
  for (auto * s : {flicker, vibration}) {
    s->add_option("--out", out_path_, "Output event file")->required();
    s->add_option("--width", width_, "Sensor width")->capture_default_str();
    s->add_option("--height", height_, "Sensor height")->capture_default_str();
    s->add_option("--region", region_, "x,y,width,height (default: whole sensor)");
    s->add_option("--duration-ms", duration_ms_, "Stream duration")->capture_default_str();
    sensor_.attach(s);
  }
  flicker->add_option("--freq", freq_hz_, "Flicker frequency (Hz)")->capture_default_str();
  flicker->add_option("--phase-deg", phase_deg_, "Waveform delay in degrees")->capture_default_str();
  flicker->callback([this] { action_ = [this] { cmd_synth_flicker(); }; });
  vibration->add_option("--band", vib_band_, "Frequency range lo:hi (Hz)")->capture_default_str();
  vibration->callback([this] { action_ = [this] { cmd_synth_vibration(); }; });

  auto * from_frames = synth->add_subcommand("from-frames", "Contrast-threshold events from a PGM sequence");
  from_frames->add_option("input", input_, "Directory of .pgm frames")->required();
  from_frames->add_option("--fps", fps_, "Frame rate")->required();
  from_frames->add_option("--out", out_path_, "Output event file")->required();
  sensor_.attach(from_frames);
  from_frames->callback([this] { action_ = [this] { cmd_synth_from_frames(); }; });

  auto * moving = synth->add_subcommand("moving-pattern", "PGM sequence of a sinusoidally moving pattern");
  moving->add_option("--out", out_path_, "Output directory")->required();
  moving->add_option("--width", width_, "Frame width")->capture_default_str();
  moving->add_option("--height", height_, "Frame height")->capture_default_str();
  moving->add_option("--fps", fps_, "Frame rate")->capture_default_str();
  moving->add_option("--frames", n_frames_, "Number of frames")->capture_default_str();
  moving->add_option("--pattern", pattern_, "blob or grating")
    ->check(CLI::IsMember({"blob", "grating"}))
    ->capture_default_str();
  moving->add_option("--amplitude", amplitude_px_, "Motion amplitude (px)")->capture_default_str();
  moving->add_option("--motion-hz", motion_hz_, "Motion frequency (Hz)")->capture_default_str();
  moving->add_option("--direction-deg", direction_deg_, "Motion direction from +x")->capture_default_str();
  moving->add_option("--blob-sigma", blob_sigma_, "Blob standard deviation (px)")->capture_default_str();
  moving->add_option("--period", period_px_, "Grating period (px)")->capture_default_str();
  moving->callback([this] { action_ = [this] { cmd_synth_moving_pattern(); }; });

  auto * filter = app.add_subcommand("filter", "Apply STC / refractory / ERC / anti-flicker filters in flag order");
  filter->add_option("input", input_, "Event file")->required();
  filter->add_option("--out", out_path_, "Output event file")->required();
  filter->add_option("--config", config_path_, "key = value filter file, applied before flags")
    ;
  filter->add_option("--stc-window-us", stc_window_us_, "Add an STC step with this burst window")
    ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  filter->add_flag("--keep-trail", keep_trail_, "STC keeps the rest of each burst");
  filter->add_option("--refractory-us", refractory_us_, "Add a refractory step")
    ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  filter->add_option("--erc-keps", erc_keps_, "Add an ERC step (thousand events per second)")
    ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  filter->add_option("--erc-window-us", erc_window_us_, "ERC window")->capture_default_str();
  filter->add_option("--af-band", af_bands_, "Anti-flicker reject band lo:hi (repeatable)")
    ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  filter->add_option("--af-window-ms", af_window_ms_, "Anti-flicker window")->capture_default_str();
  filter->callback([this, filter] { action_ = [this, filter] { cmd_filter(*filter); }; });

  auto * freqmap = app.add_subcommand("freqmap", "Per-pixel frequency map of an event file");
  freqmap->add_option("input", input_, "Event file")->required();
  freq_.attach(freqmap);
  freqmap->add_option("--out", out_path_, "Rendered map (.png or .ppm)");
  freqmap->add_option("--csv", csv_path_, "Map as x,y,freq_hz rows");
  freqmap->add_option("--hist", hist_path_, "Histogram CSV");
  freqmap->add_option("--bins", bins_, "Histogram bins")->capture_default_str();
  freqmap->add_option("--colormap", colormap_, "turbo or hsv")
    ->check(CLI::IsMember({"turbo", "hsv"}))
    ->capture_default_str();
  freqmap->callback([this] { action_ = [this] { cmd_freqmap(); }; });

  auto * render = app.add_subcommand("render", "Render a frequency-map CSV");
  render->add_option("input", input_, "Map CSV")->required();
  render->add_option("--out", out_path_, "Output image (.png or .ppm)")->required();
  render->add_option("--width", csv_width_, "Map width (default: inferred)");
  render->add_option("--height", csv_height_, "Map height (default: inferred)");
  render->add_option("--fmin", freq_.fmin, "Colour scale minimum (Hz)")->capture_default_str();
  render->add_option("--fmax", freq_.fmax, "Colour scale maximum (Hz)")->capture_default_str();
  render->add_option("--colormap", colormap_, "turbo or hsv")
    ->check(CLI::IsMember({"turbo", "hsv"}))
    ->capture_default_str();
  render->callback([this] { action_ = [this] { cmd_render(); }; });

  auto * histogram = app.add_subcommand("histogram", "Histogram of a frequency-map CSV");
  histogram->add_option("input", input_, "Map CSV")->required();
  histogram->add_option("--bins", bins_, "Number of bins")->capture_default_str();
  histogram->add_option("--out", out_path_, "Histogram CSV (default: standard output)");
  histogram->callback([this] { action_ = [this] { cmd_histogram(); }; });

  auto * magnify = app.add_subcommand("magnify", "Phase-based motion magnification of a PGM sequence");
  magnify->add_option("input", input_, "Directory of .pgm frames")->required();
  magnify->add_option("--fps", fps_, "Frame rate")->required();
  auto * band = magnify->add_option("--band", band_, "Temporal passband lo:hi (Hz)");
  auto * band_from = magnify->add_option("--band-from", band_from_, "Take the passband from a histogram CSV")
                       ;
  band->excludes(band_from);
  magnify->add_option("--m", m_, "Magnification factor (motion gain is 1 + m)")->capture_default_str();
  magnify->add_option("--filter-kind", filter_kind_, "butterworth or fir")
    ->check(CLI::IsMember({"butterworth", "fir"}))
    ->capture_default_str();
  magnify->add_option("--order", order_, "Butterworth order")->capture_default_str();
  magnify->add_option("--taps", taps_, "FIR taps (odd)")->capture_default_str();
  magnify->add_option("--sigma", sigma_, "Phase denoising sigma (px), 0 disables")->capture_default_str();
  magnify->add_option("--orientations", orientations_, "Pyramid orientations")->capture_default_str();
  magnify->add_option("--octave-fraction", octave_fraction_, "1 = octave bands, 2 = half-octave")
    ->check(CLI::IsMember({1, 2}))
    ->capture_default_str();
  magnify->add_flag("--amplify-lowpass", amplify_lowpass_, "Also amplify the low-pass residual");
  magnify->add_option("--out", out_path_, "Output directory")->required();
  magnify->callback([this] { action_ = [this] { cmd_magnify(); }; });

  auto * measure = app.add_subcommand("measure", "Sub-pixel displacement of each frame against a reference");
  measure->add_option("input", input_, "Directory of .pgm frames")->required();
  measure->add_option("--fps", fps_, "Frame rate")->capture_default_str();
  measure->add_option("--reference", reference_, "Reference frame index")->capture_default_str();
  measure->add_option("--csv", csv_path_, "Write frame,dx,dy rows here instead of standard output");
  measure->callback([this] { action_ = [this] { cmd_measure(); }; });
}

void Runner::cmd_info()
{
  const EventStream s = load_events(input_);
  std::size_t on = 0;
  for (const auto & e : s.events) on += e.p == Polarity::On ? 1 : 0;
  const duration_us span = s.empty() ? 0 : s.events.back().t - s.events.front().t;
  out_ << "geometry: " << s.geometry.width << "x" << s.geometry.height << '\n';
  out_ << "events: " << s.size() << '\n';
  out_ << "duration_us: " << span << '\n';
  out_ << "on: " << on << '\n';
  out_ << "off: " << s.size() - on << '\n';
}

void Runner::cmd_convert()
{
  CsvDecodeOptions opts;
  opts.sort = sort_;
  if (csv_width_ || csv_height_) {
    if (!csv_width_ || !csv_height_) throw std::invalid_argument("--width and --height go together");
    opts.geometry = SensorGeometry{csv_width_, csv_height_};
  }
  std::vector<std::string> warnings;
  const EventStream s = read_event_file(input_, opts, &warnings);
  warn(warnings);
  write_event_file(out_path_, s);
}

void Runner::cmd_synth_flicker()
{
  const SensorGeometry g{width_, height_};
  const EventStream s = synth_flicker(
    g, parse_region(region_, g), freq_hz_, ms_to_us(duration_ms_), sensor_.model(), phase_deg_,
    {sensor_.jitter_us, seed_});
  write_event_file(out_path_, s);
}

void Runner::cmd_synth_vibration()
{
  const SensorGeometry g{width_, height_};
  const FlickerBand b = parse_band(vib_band_);
  const EventStream s = synth_vibration(
    g, parse_region(region_, g), b.lo_hz, b.hi_hz, ms_to_us(duration_ms_), sensor_.model(), {sensor_.jitter_us, seed_});
  write_event_file(out_path_, s);
}

void Runner::cmd_synth_from_frames()
{
  const FrameSequence frames = read_frame_dir(input_, fps_);
  write_event_file(out_path_, synth_from_frames(frames, sensor_.model(), {sensor_.jitter_us, seed_}));
}

void Runner::cmd_synth_moving_pattern()
{
  PatternOptions opts;
  opts.direction_deg = direction_deg_;
  opts.blob_sigma_px = blob_sigma_;
  opts.grating_period_px = period_px_;
  const FrameSequence seq = synth_moving_pattern(
    width_, height_, fps_, n_frames_, pattern_ == "grating" ? Pattern::SineGrating : Pattern::GaussianBlob,
    amplitude_px_, motion_hz_, opts);
  write_frame_dir(out_path_, seq);
}

void Runner::cmd_filter(CLI::App & sub)
{
  FilterChainBuilder builder;
  if (!config_path_.empty()) parse_filter_config(read_text_file(config_path_), builder);

  // Steps follow the order their flags appear on the command line.
  std::map<std::string, std::size_t> used;
  for (const CLI::Option * opt : sub.parse_order()) {
    const std::string name = opt->get_name();
    if (name == "--stc-window-us") {
      builder.add_stc(stc_window_us_.at(used[name]++));
    } else if (name == "--refractory-us") {
      builder.add_refractory(refractory_us_.at(used[name]++));
    } else if (name == "--erc-keps") {
      builder.add_erc(erc_keps_.at(used[name]++));
    } else if (name == "--af-band") {
      builder.add_af_band(parse_band(af_bands_.at(used[name]++)));
    }
  }
  if (keep_trail_) builder.set_keep_trail(true);
  if (sub.count("--erc-window-us")) builder.set_erc_window(erc_window_us_);
  if (sub.count("--af-window-ms")) builder.set_af_window(ms_to_us(af_window_ms_));
  if (builder.empty()) throw std::invalid_argument("no filter steps given");

  const EventStream in = load_events(input_);
  const auto steps = builder.build();
  write_event_file(out_path_, apply_filters(in, steps));
}

void Runner::cmd_freqmap()
{
  const FreqMapConfig cfg = freq_.config();
  const EventStream s = load_events(input_);
  const FrequencyMap map = compute_stream_freq_map(s, cfg);
  if (!out_path_.empty()) write_rgb_image(out_path_, render_freq_map(map, cfg, parse_colormap(colormap_)));
  if (!csv_path_.empty()) write_text_file(csv_path_, freq_map_to_csv(map));
  if (!hist_path_.empty()) write_text_file(hist_path_, histogram_to_csv(freq_histogram(map, bins_)));
  out_ << "estimated_pixels: " << map.estimated_count() << '\n';
  const FreqHistogram h = freq_histogram(map, bins_);
  if (!h.bins.empty()) {
    const auto & d = h.bins[h.dominant];
    out_ << format("dominant_band_hz: %.3f:%.3f\n", d.lo_hz, d.hi_hz);
  }
}

void Runner::cmd_render()
{
  std::optional<SensorGeometry> g;
  if (csv_width_ && csv_height_) g = SensorGeometry{csv_width_, csv_height_};
  const FrequencyMap map = freq_map_from_csv(read_text_file(input_), g);
  FreqMapConfig cfg;
  cfg.f_min_hz = freq_.fmin;
  cfg.f_max_hz = freq_.fmax;
  cfg.validate();
  write_rgb_image(out_path_, render_freq_map(map, cfg, parse_colormap(colormap_)));
}

void Runner::cmd_histogram()
{
  const FrequencyMap map = freq_map_from_csv(read_text_file(input_));
  const std::string csv = histogram_to_csv(freq_histogram(map, bins_));
  if (out_path_.empty()) out_ << csv;
  else write_text_file(out_path_, csv);
}

void Runner::cmd_magnify()
{
  FlickerBand band;
  if (!band_.empty()) {
    band = parse_band(band_);
  } else if (!band_from_.empty()) {
    const auto [lo, hi] = band_from_histogram(histogram_from_csv(read_text_file(band_from_)));
    band = {lo, hi};
  } else {
    throw std::invalid_argument("magnify needs --band or --band-from");
  }

  const FrameSequence frames = read_frame_dir(input_, fps_);
  MagnifyParams p;
  p.m = m_;
  p.denoise_sigma_px = sigma_;
  p.amplify_lowpass_residual = amplify_lowpass_;
  p.filter.kind = filter_kind_ == "fir" ? FilterKind::Fir : FilterKind::Butterworth;
  p.filter.order = order_;
  p.filter.n_taps = taps_;
  p.filter.f_lo_hz = band.lo_hz;
  p.filter.f_hi_hz = band.hi_hz;
  p.filter.sample_rate = fps_;
  p.validate();

  const FilterBank bank = FilterBank::build(frames.width, frames.height, orientations_, octave_fraction_);
  const MagnifyResult r = magnify_sequence(frames, p, bank);
  write_frame_dir(out_path_, r.frames);
  std::size_t transient = 0;
  for (bool t : r.transient) transient += t ? 1 : 0;
  out_ << "frames: " << r.frames.size() << '\n';
  out_ << "transient_frames: " << transient << '\n';
  out_ << format("band_hz: %.3f:%.3f\n", band.lo_hz, band.hi_hz);
}

void Runner::cmd_measure()
{
  const FrameSequence frames = read_frame_dir(input_, fps_);
  const auto d = measure_displacement(frames, reference_);
  std::string csv = "frame,dx,dy\n";
  for (std::size_t i = 0; i < d.size(); ++i) csv += format("%zu,%.6f,%.6f\n", i, d[i].dx, d[i].dy);
  if (csv_path_.empty()) out_ << csv;
  else write_text_file(csv_path_, csv);
}

int Runner::main(int argc, const char * const * argv)
{
  CLI::App app{"evkit: event-camera frequency analysis and phase-based motion magnification", "evkit"};
  build(app);
  try {
    app.parse(argc, argv);
    set_thread_count(threads_);
    if (action_) action_();
  } catch (const CLI::ParseError & e) {
    const int code = app.exit(e, out_, err_);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::invalid_argument & e) {
    err_ << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError & e) {
    err_ << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const fs::filesystem_error & e) {
    err_ << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception & e) {
    err_ << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}
}  // namespace

int run(int argc, const char * const * argv, std::ostream & out, std::ostream & err)
{
  Runner r(out, err);
  return r.main(argc, argv);
}

int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err)
{
  std::vector<const char *> argv{"evkit"};
  for (const auto & a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace evkit::cli
