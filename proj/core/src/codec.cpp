// Copyright 2026 The SceneAug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sceneaug/codec.hpp"

#include <openssl/evp.h>
#include <png.h>

#include <csetjmp>
#include <cstring>
#include <fstream>
#include <iterator>
#include <system_error>

#include "sceneaug/random.hpp"

namespace sceneaug {
namespace {

// libpng reports errors by longjmp. Every function that calls into libpng
// below holds only trivially destructible locals so the jump is safe;
// buffers are owned by the callers.

struct MemoryReader {
  std::span<const std::uint8_t> bytes;
  std::size_t offset = 0;
};

void ReadCallback(png_structp png, png_bytep out, png_size_t length) {
  auto* reader = static_cast<MemoryReader*>(png_get_io_ptr(png));
  if (reader->offset + length > reader->bytes.size()) {
    png_error(png, "unexpected end of PNG data");
  }
  std::memcpy(out, reader->bytes.data() + reader->offset, length);
  reader->offset += length;
}

void WriteCallback(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<Bytes*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void FlushCallback(png_structp) {}

void WarningCallback(png_structp, png_const_charp) {}

struct ReadHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ReadHandles() {
    png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, WarningCallback);
    if (png != nullptr) info = png_create_info_struct(png);
  }
  ~ReadHandles() { png_destroy_read_struct(&png, &info, nullptr); }
};

struct WriteHandles {
  png_structp png = nullptr;
  png_infop info = nullptr;
  WriteHandles() {
    png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, WarningCallback);
    if (png != nullptr) info = png_create_info_struct(png);
  }
  ~WriteHandles() { png_destroy_write_struct(&png, &info); }
};

struct HeaderInfo {
  png_uint_32 width;
  png_uint_32 height;
  int bit_depth;
  int color_type;
  png_size_t row_bytes;
  int palette_size;
  png_colorp palette;
};

bool ReadHeader(ReadHandles& h, MemoryReader* reader, HeaderInfo* out) {
  if (setjmp(png_jmpbuf(h.png))) return false;
  png_set_read_fn(h.png, reader, ReadCallback);
  png_read_info(h.png, h.info);
  int interlace = 0;
  png_get_IHDR(h.png, h.info, &out->width, &out->height, &out->bit_depth,
               &out->color_type, &interlace, nullptr, nullptr);
  if (out->bit_depth < 8) png_set_packing(h.png);
  if (out->color_type == PNG_COLOR_TYPE_RGB && out->bit_depth == 16) {
    png_set_strip_16(h.png);
  }
  if (out->color_type == PNG_COLOR_TYPE_RGB_ALPHA && out->bit_depth == 16) {
    png_set_strip_16(h.png);
  }
  png_set_interlace_handling(h.png);
  png_read_update_info(h.png, h.info);
  out->row_bytes = png_get_rowbytes(h.png, h.info);
  out->palette_size = 0;
  out->palette = nullptr;
  if (out->color_type == PNG_COLOR_TYPE_PALETTE) {
    png_get_PLTE(h.png, h.info, &out->palette, &out->palette_size);
  }
  return true;
}

bool ReadRows(ReadHandles& h, png_bytepp rows) {
  if (setjmp(png_jmpbuf(h.png))) return false;
  png_read_image(h.png, rows);
  png_read_end(h.png, nullptr);
  return true;
}

struct WriteSpec {
  int width;
  int height;
  int bit_depth;
  int color_type;
  const png_color* palette;
  int palette_size;
};

bool WriteImage(WriteHandles& h, Bytes* out, const WriteSpec& spec, png_bytepp rows) {
  if (setjmp(png_jmpbuf(h.png))) return false;
  png_set_write_fn(h.png, out, WriteCallback, FlushCallback);
  png_set_IHDR(h.png, h.info, static_cast<png_uint_32>(spec.width),
               static_cast<png_uint_32>(spec.height), spec.bit_depth, spec.color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  if (spec.palette != nullptr) {
    png_set_PLTE(h.png, h.info, spec.palette, spec.palette_size);
  }
  png_write_info(h.png, h.info);
  png_write_image(h.png, rows);
  png_write_end(h.png, nullptr);
  return true;
}

Bytes EncodeRaw(int width, int height, int bit_depth, int color_type, int bytes_per_row,
                const std::uint8_t* data, const png_color* palette = nullptr,
                int palette_size = 0) {
  if (width <= 0 || height <= 0) {
    Fail(ErrorCode::kInvalidArgument, "cannot encode an empty image as PNG");
  }
  WriteHandles h;
  if (h.png == nullptr || h.info == nullptr) Fail(ErrorCode::kIoError, "libpng init failed");
  std::vector<png_bytep> rows(static_cast<std::size_t>(height));
  for (int v = 0; v < height; ++v) {
    rows[v] = const_cast<png_bytep>(data + static_cast<std::size_t>(v) * bytes_per_row);
  }
  Bytes out;
  const WriteSpec spec{width, height, bit_depth, color_type, palette, palette_size};
  if (!WriteImage(h, &out, spec, rows.data())) {
    Fail(ErrorCode::kIoError, "PNG encoding failed");
  }
  return out;
}

std::array<png_color, 256> MaskPalette() {
  std::array<png_color, 256> palette{};
  palette[0] = {0, 0, 0};
  palette[1] = {230, 40, 40};
  palette[2] = {40, 200, 60};
  for (int i = 3; i < 256; ++i) {
    const std::uint64_t h = Mix64(static_cast<std::uint64_t>(i));
    palette[i] = {static_cast<png_byte>(64 + (h & 0xBF)),
                  static_cast<png_byte>(64 + ((h >> 8) & 0xBF)),
                  static_cast<png_byte>(64 + ((h >> 16) & 0xBF))};
  }
  return palette;
}

}  // namespace

Bytes EncodePngRgb(const RgbImage& rgb) {
  if (rgb.channels() != 3) Fail(ErrorCode::kInvalidArgument, "expected 3 channels");
  return EncodeRaw(rgb.width(), rgb.height(), 8, PNG_COLOR_TYPE_RGB, rgb.width() * 3,
                   rgb.data().data());
}

Bytes EncodePngRgba(const RgbaImage& rgba) {
  if (rgba.channels() != 4) Fail(ErrorCode::kInvalidArgument, "expected 4 channels");
  return EncodeRaw(rgba.width(), rgba.height(), 8, PNG_COLOR_TYPE_RGB_ALPHA,
                   rgba.width() * 4, rgba.data().data());
}

Bytes EncodePngGray8(const Image<std::uint8_t>& gray) {
  if (gray.channels() != 1) Fail(ErrorCode::kInvalidArgument, "expected 1 channel");
  return EncodeRaw(gray.width(), gray.height(), 8, PNG_COLOR_TYPE_GRAY, gray.width(),
                   gray.data().data());
}

Bytes EncodePngGray16(const Image<std::uint16_t>& gray) {
  if (gray.channels() != 1) Fail(ErrorCode::kInvalidArgument, "expected 1 channel");
  // PNG stores 16-bit samples big-endian.
  std::vector<std::uint8_t> be(gray.pixel_count() * 2);
  auto src = gray.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    be[2 * i] = static_cast<std::uint8_t>(src[i] >> 8);
    be[2 * i + 1] = static_cast<std::uint8_t>(src[i] & 0xFF);
  }
  return EncodeRaw(gray.width(), gray.height(), 16, PNG_COLOR_TYPE_GRAY, gray.width() * 2,
                   be.data());
}

Bytes EncodePngIndexed(const Image<std::uint8_t>& indices) {
  if (indices.channels() != 1) Fail(ErrorCode::kInvalidArgument, "expected 1 channel");
  static const std::array<png_color, 256> palette = MaskPalette();
  return EncodeRaw(indices.width(), indices.height(), 8, PNG_COLOR_TYPE_PALETTE,
                   indices.width(), indices.data().data(), palette.data(),
                   static_cast<int>(palette.size()));
}

DecodedPng DecodePng(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 8 || png_sig_cmp(bytes.data(), 0, 8) != 0) {
    Fail(ErrorCode::kFormatError, "not a PNG file");
  }
  ReadHandles h;
  if (h.png == nullptr || h.info == nullptr) Fail(ErrorCode::kIoError, "libpng init failed");
  MemoryReader reader{bytes, 0};
  HeaderInfo info{};
  if (!ReadHeader(h, &reader, &info)) Fail(ErrorCode::kFormatError, "corrupt PNG header");

  DecodedPng out;
  out.width = static_cast<int>(info.width);
  out.height = static_cast<int>(info.height);
  int channels = 0;
  switch (info.color_type) {
    case PNG_COLOR_TYPE_GRAY:
      out.kind = info.bit_depth == 16 ? PngKind::kGray16 : PngKind::kGray8;
      channels = 1;
      break;
    case PNG_COLOR_TYPE_RGB:
      out.kind = PngKind::kRgb8;
      channels = 3;
      break;
    case PNG_COLOR_TYPE_RGB_ALPHA:
      out.kind = PngKind::kRgba8;
      channels = 4;
      break;
    case PNG_COLOR_TYPE_PALETTE:
      out.kind = PngKind::kIndexed8;
      channels = 1;
      for (int i = 0; i < info.palette_size; ++i) {
        out.palette.push_back(info.palette[i].red);
        out.palette.push_back(info.palette[i].green);
        out.palette.push_back(info.palette[i].blue);
      }
      break;
    default:
      Fail(ErrorCode::kFormatError, "unsupported PNG color type");
  }

  std::vector<std::uint8_t> raw(info.row_bytes * info.height);
  std::vector<png_bytep> rows(info.height);
  for (png_uint_32 v = 0; v < info.height; ++v) rows[v] = raw.data() + v * info.row_bytes;
  if (!ReadRows(h, rows.data())) Fail(ErrorCode::kFormatError, "corrupt PNG data");

  const std::size_t samples = static_cast<std::size_t>(out.width) * out.height * channels;
  if (out.kind == PngKind::kGray16) {
    out.wide.resize(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      const std::size_t row = i / out.width;
      const std::size_t col = i % out.width;
      const std::uint8_t* p = raw.data() + row * info.row_bytes + col * 2;
      out.wide[i] = static_cast<std::uint16_t>((p[0] << 8) | p[1]);
    }
  } else {
    out.narrow.resize(samples);
    const std::size_t row_len = static_cast<std::size_t>(out.width) * channels;
    for (int v = 0; v < out.height; ++v) {
      std::memcpy(out.narrow.data() + v * row_len, raw.data() + v * info.row_bytes, row_len);
    }
  }
  return out;
}

RgbImage DecodePngAsRgb(std::span<const std::uint8_t> bytes) {
  DecodedPng png = DecodePng(bytes);
  RgbImage rgb = MakeRgb(png.width, png.height);
  auto dst = rgb.data();
  const std::size_t n = rgb.pixel_count();
  switch (png.kind) {
    case PngKind::kRgb8:
      std::copy(png.narrow.begin(), png.narrow.end(), dst.begin());
      break;
    case PngKind::kRgba8:
      for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < 3; ++c) dst[3 * i + c] = png.narrow[4 * i + c];
      }
      break;
    case PngKind::kGray8:
      for (std::size_t i = 0; i < n; ++i) {
        for (int c = 0; c < 3; ++c) dst[3 * i + c] = png.narrow[i];
      }
      break;
    case PngKind::kIndexed8:
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t idx = png.narrow[i];
        if (3 * idx + 2 >= png.palette.size()) {
          Fail(ErrorCode::kFormatError, "palette index out of range");
        }
        for (int c = 0; c < 3; ++c) dst[3 * i + c] = png.palette[3 * idx + c];
      }
      break;
    case PngKind::kGray16:
      Fail(ErrorCode::kFormatError, "expected an 8-bit color PNG, got 16-bit gray");
  }
  return rgb;
}

RgbaImage DecodePngAsRgba(std::span<const std::uint8_t> bytes) {
  DecodedPng png = DecodePng(bytes);
  if (png.kind == PngKind::kRgba8) {
    RgbaImage out(png.width, png.height, 4);
    std::copy(png.narrow.begin(), png.narrow.end(), out.data().begin());
    return out;
  }
  RgbImage rgb = DecodePngAsRgb(bytes);
  RgbaImage out(png.width, png.height, 4);
  for (std::size_t i = 0; i < rgb.pixel_count(); ++i) {
    for (int c = 0; c < 3; ++c) out.data()[4 * i + c] = rgb.data()[3 * i + c];
    out.data()[4 * i + 3] = 255;
  }
  return out;
}

Image<std::uint16_t> DecodePngAsGray16(std::span<const std::uint8_t> bytes) {
  DecodedPng png = DecodePng(bytes);
  if (png.kind != PngKind::kGray16) {
    Fail(ErrorCode::kFormatError, "expected a 16-bit grayscale PNG");
  }
  Image<std::uint16_t> out(png.width, png.height, 1);
  std::copy(png.wide.begin(), png.wide.end(), out.data().begin());
  return out;
}

Image<std::uint8_t> DecodePngAsIndices(std::span<const std::uint8_t> bytes) {
  DecodedPng png = DecodePng(bytes);
  if (png.kind != PngKind::kIndexed8 && png.kind != PngKind::kGray8) {
    Fail(ErrorCode::kFormatError, "expected an indexed or 8-bit grayscale PNG");
  }
  Image<std::uint8_t> out(png.width, png.height, 1);
  std::copy(png.narrow.begin(), png.narrow.end(), out.data().begin());
  return out;
}

std::string Base64Encode(std::span<const std::uint8_t> bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), bytes.data(),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

Bytes Base64Decode(std::string_view text) {
  if (text.size() % 4 != 0) Fail(ErrorCode::kFormatError, "base64 length not a multiple of 4");
  Bytes out(3 * (text.size() / 4));
  if (text.empty()) return out;
  const int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(text.data()),
                                static_cast<int>(text.size()));
  if (n < 0) Fail(ErrorCode::kFormatError, "malformed base64");
  std::size_t padding = 0;
  if (text.back() == '=') ++padding;
  if (text.size() >= 2 && text[text.size() - 2] == '=') ++padding;
  out.resize(static_cast<std::size_t>(n) - padding);
  return out;
}

Sha256::Sha256() : ctx_(EVP_MD_CTX_new()) {
  if (ctx_ == nullptr ||
      EVP_DigestInit_ex(static_cast<EVP_MD_CTX*>(ctx_), EVP_sha256(), nullptr) != 1) {
    Fail(ErrorCode::kIoError, "SHA-256 init failed");
  }
}

Sha256::~Sha256() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_)); }

void Sha256::update(std::span<const std::uint8_t> bytes) {
  EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), bytes.data(), bytes.size());
}

void Sha256::update(std::string_view text) {
  EVP_DigestUpdate(static_cast<EVP_MD_CTX*>(ctx_), text.data(), text.size());
}

std::string Sha256::hex_digest() {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(static_cast<EVP_MD_CTX*>(ctx_), md, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

std::string Sha256Hex(std::span<const std::uint8_t> bytes) {
  Sha256 h;
  h.update(bytes);
  return h.hex_digest();
}

std::string Sha256Hex(std::string_view text) {
  Sha256 h;
  h.update(text);
  return h.hex_digest();
}

Bytes ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoError, "cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string ReadFileText(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoError, "cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void WriteFileAtomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(ErrorCode::kIoError, "cannot write " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) Fail(ErrorCode::kIoError, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) Fail(ErrorCode::kIoError, "rename to " + path.string() + ": " + ec.message());
}

void WriteFileAtomic(const std::filesystem::path& path, std::string_view text) {
  WriteFileAtomic(path, std::span<const std::uint8_t>(
                            reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace sceneaug
