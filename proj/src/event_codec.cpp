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

#include "evkit/event_codec.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "evkit/errors.hpp"

namespace evkit
{
namespace
{
constexpr char kMagic[5] = {'E', 'V', 'S', '1', '\n'};

template <typename T>
bool parse_field(std::string_view s, T & out)
{
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

void put_le(std::vector<std::uint8_t> & buf, std::uint64_t v, int n_bytes)
{
  for (int i = 0; i < n_bytes; ++i) buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint64_t get_le(const std::uint8_t * p, int n_bytes)
{
  std::uint64_t v = 0;
  for (int i = 0; i < n_bytes; ++i) v |= std::uint64_t{p[i]} << (8 * i);
  return v;
}

void append_decimal(std::string & out, std::uint64_t v)
{
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}
}  // namespace

EventStream decode_csv(std::string_view text, const CsvDecodeOptions & opts)
{
  EventStream stream;
  std::uint32_t max_x = 0, max_y = 0;
  std::size_t line_no = 0;
  bool out_of_order = false;
  std::size_t first_unsorted_line = 0;

  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line_no == 1 && line == "t,x,y,p") continue;

    std::string_view fields[4];
    std::size_t n = 0;
    for (std::string_view rest = line;;) {
      const auto comma = rest.find(',');
      if (n == 4) throw ParseError(line_no, "expected 4 fields t,x,y,p");
      fields[n++] = rest.substr(0, comma);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (n != 4) throw ParseError(line_no, "expected 4 fields t,x,y,p");

    Event e;
    std::uint32_t x = 0, y = 0;
    unsigned p = 0;
    if (!parse_field(fields[0], e.t)) throw ParseError(line_no, "bad timestamp");
    if (!parse_field(fields[1], x) || x > 0xFFFF) throw ParseError(line_no, "bad x");
    if (!parse_field(fields[2], y) || y > 0xFFFF) throw ParseError(line_no, "bad y");
    if (!parse_field(fields[3], p) || p > 1) throw ParseError(line_no, "polarity must be 0 or 1");
    e.x = static_cast<std::uint16_t>(x);
    e.y = static_cast<std::uint16_t>(y);
    e.p = p ? Polarity::On : Polarity::Off;

    if (!stream.events.empty() && e.t < stream.events.back().t && !out_of_order) {
      out_of_order = true;
      first_unsorted_line = line_no;
    }
    max_x = std::max(max_x, x);
    max_y = std::max(max_y, y);
    stream.events.push_back(e);
  }

  if (out_of_order) {
    if (!opts.sort) {
      throw OrderError(
        "timestamps decrease at line " + std::to_string(first_unsorted_line) +
        " (use the sort option to reorder)");
    }
    sort_by_time(stream.events);
  }

  if (opts.geometry) {
    stream.geometry = *opts.geometry;
    for (std::size_t i = 0; i < stream.events.size(); ++i) {
      const auto & e = stream.events[i];
      if (!stream.geometry.contains(e.x, e.y)) {
        throw FormatError("event " + std::to_string(i) + " outside supplied geometry");
      }
    }
  } else {
    stream.geometry = {max_x + 1, max_y + 1};
  }
  return stream;
}

std::string encode_csv(const EventStream & stream)
{
  std::string out;
  out.reserve(stream.events.size() * 20);
  for (const auto & e : stream.events) {
    append_decimal(out, e.t);
    out.push_back(',');
    append_decimal(out, e.x);
    out.push_back(',');
    append_decimal(out, e.y);
    out.push_back(',');
    out.push_back(e.p == Polarity::On ? '1' : '0');
    out.push_back('\n');
  }
  return out;
}

std::vector<std::uint8_t> encode_evs1(const EventStream & stream)
{
  const auto & g = stream.geometry;
  if (g.width < 1 || g.height < 1 || g.width > 0xFFFF || g.height > 0xFFFF) {
    throw std::invalid_argument("EVS1 geometry must be within 1..65535");
  }
  std::vector<std::uint8_t> buf;
  buf.reserve(kEvs1HeaderSize + kEvs1RecordSize * stream.events.size());
  buf.insert(buf.end(), std::begin(kMagic), std::end(kMagic));
  buf.push_back(kEvs1Version);
  put_le(buf, g.width, 2);
  put_le(buf, g.height, 2);
  put_le(buf, 0, 4);
  for (const auto & e : stream.events) {
    put_le(buf, e.t, 8);
    put_le(buf, e.x, 2);
    put_le(buf, e.y, 2);
    buf.push_back(e.p == Polarity::On ? 1 : 0);
    put_le(buf, 0, 3);
  }
  return buf;
}

Evs1Header read_evs1_header(std::span<const std::uint8_t> bytes)
{
  if (bytes.size() < kEvs1HeaderSize) throw FormatError("truncated EVS1 header");
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) throw FormatError("bad EVS1 magic");
  Evs1Header h;
  h.version = bytes[5];
  if (h.version != kEvs1Version) {
    throw FormatError("unsupported EVS1 version " + std::to_string(h.version));
  }
  h.width = static_cast<std::uint16_t>(get_le(bytes.data() + 6, 2));
  h.height = static_cast<std::uint16_t>(get_le(bytes.data() + 8, 2));
  if (h.width < 1 || h.height < 1) throw FormatError("EVS1 geometry must be at least 1x1");
  return h;
}

EventStream decode_evs1(std::span<const std::uint8_t> bytes, std::vector<std::string> & warnings)
{
  const Evs1Header h = read_evs1_header(bytes);
  if (get_le(bytes.data() + 10, 4) != 0) warnings.emplace_back("nonzero reserved header bytes");

  const auto body = bytes.subspan(kEvs1HeaderSize);
  if (body.size() % kEvs1RecordSize != 0) {
    throw FormatError(
      "truncated EVS1 body: " + std::to_string(body.size()) + " bytes is not a multiple of 16");
  }
  const std::size_t n = body.size() / kEvs1RecordSize;

  EventStream stream;
  stream.geometry = {h.width, h.height};
  stream.events.resize(n);
  std::size_t pad_warnings = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint8_t * r = body.data() + i * kEvs1RecordSize;
    Event & e = stream.events[i];
    e.t = get_le(r, 8);
    e.x = static_cast<std::uint16_t>(get_le(r + 8, 2));
    e.y = static_cast<std::uint16_t>(get_le(r + 10, 2));
    if (r[12] > 1) throw FormatError("record " + std::to_string(i) + ": polarity byte not 0/1");
    e.p = r[12] ? Polarity::On : Polarity::Off;
    if (r[13] | r[14] | r[15]) ++pad_warnings;
    if (!stream.geometry.contains(e.x, e.y)) {
      throw FormatError("record " + std::to_string(i) + ": coordinate out of range");
    }
    if (i > 0 && e.t < stream.events[i - 1].t) {
      throw OrderError("record " + std::to_string(i) + ": timestamp decreases");
    }
  }
  if (pad_warnings) {
    warnings.push_back(std::to_string(pad_warnings) + " record(s) with nonzero padding");
  }
  return stream;
}

EventStream decode_evs1(std::span<const std::uint8_t> bytes)
{
  std::vector<std::string> ignored;
  return decode_evs1(bytes, ignored);
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string read_text_file(const std::filesystem::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_binary_file(const std::filesystem::path & path, std::span<const std::uint8_t> bytes)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + path.string());
  out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw DataError("write failed: " + path.string());
}

void write_text_file(const std::filesystem::path & path, std::string_view text)
{
  write_binary_file(
    path, std::span(reinterpret_cast<const std::uint8_t *>(text.data()), text.size()));
}

EventStream read_event_file(
  const std::filesystem::path & path, const CsvDecodeOptions & csv_opts,
  std::vector<std::string> * warnings)
{
  const auto ext = path.extension().string();
  if (ext == ".csv") return decode_csv(read_text_file(path), csv_opts);
  if (ext == ".evs1") {
    std::vector<std::string> local;
    auto s = decode_evs1(read_binary_file(path), warnings ? *warnings : local);
    if (csv_opts.geometry && *csv_opts.geometry != s.geometry) {
      throw FormatError("geometry flag disagrees with EVS1 header");
    }
    return s;
  }
  throw DataError("unknown event file extension '" + ext + "' (expected .csv or .evs1)");
}

void write_event_file(const std::filesystem::path & path, const EventStream & stream)
{
  const auto ext = path.extension().string();
  if (ext == ".csv") {
    write_text_file(path, encode_csv(stream));
  } else if (ext == ".evs1") {
    write_binary_file(path, encode_evs1(stream));
  } else {
    throw DataError("unknown event file extension '" + ext + "' (expected .csv or .evs1)");
  }
}

}  // namespace evkit
