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

#include "sceneaug/annotation_server.hpp"

#include <map>
#include <shared_mutex>

#include "json_util.hpp"
#include "sceneaug/codec.hpp"
#include "sceneaug/dataset_io.hpp"
#include "sceneaug/polygon.hpp"
#include "sceneaug/scene.hpp"

// After the Eigen-bearing headers: <resolv.h> defines a `_res` macro.
#include <httplib.h>

namespace sceneaug {

using internal::Json;

std::vector<int> EncodeRle(const Bitmap& mask) {
  std::vector<int> runs;
  std::uint8_t current = 0;
  int run = 0;
  for (std::uint8_t x : mask.data()) {
    const std::uint8_t bit = x ? 1 : 0;
    if (bit != current) {
      runs.push_back(run);
      current = bit;
      run = 0;
    }
    ++run;
  }
  runs.push_back(run);
  return runs;
}

Bitmap DecodeRle(const std::vector<int>& runs, int width, int height) {
  Bitmap mask = MakeBitmap(width, height);
  std::size_t pos = 0;
  std::uint8_t bit = 0;
  for (int run : runs) {
    if (run < 0 || pos + static_cast<std::size_t>(run) > mask.data().size()) {
      Fail(ErrorCode::kFormatError, "run-length code does not fit the mask");
    }
    std::fill_n(mask.data().begin() + static_cast<std::ptrdiff_t>(pos), run, bit);
    pos += static_cast<std::size_t>(run);
    bit ^= 1;
  }
  if (pos != mask.data().size()) Fail(ErrorCode::kFormatError, "run-length code is short");
  return mask;
}

namespace {

struct Entry {
  std::shared_mutex mu;
  Demo demo;
};

class HttpError : public std::runtime_error {
 public:
  HttpError(int status, const std::string& message, Json details = nullptr)
      : std::runtime_error(message), status(status), details(std::move(details)) {}
  int status;
  Json details;
};

Json MaskJson(const Bitmap& m) {
  return {{"pixels", CountSet(m)}, {"rle", EncodeRle(m)}};
}

Json StateJson(const Demo& d) {
  Json distractors = Json::array();
  for (const auto& m : d.masks.distractors) distractors.push_back(MaskJson(m));
  Json action = nullptr;
  if (d.action) {
    action = {{"pick", internal::ToJson(d.action->pick)},
              {"place", internal::ToJson(d.action->place)}};
  }
  return {{"id", d.id},
          {"task_text", d.task_text},
          {"width", d.obs.width()},
          {"height", d.obs.height()},
          {"action", action},
          {"masks",
           {{"pick", MaskJson(d.masks.pick_object)},
            {"place", MaskJson(d.masks.place_target)},
            {"distractors", distractors}}},
          {"violations", ValidateDemo(d)}};
}

Json Body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const Json::exception& e) {
    throw HttpError(400, std::string("body is not valid JSON: ") + e.what());
  }
}

Pixel ParsePixel(const Json& j, const char* what, const Demo& d) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw HttpError(400, std::string(what) + " must be an integer pair [u, v]");
  }
  const Pixel p{j[0].get<int>(), j[1].get<int>()};
  if (!d.obs.rgb.contains(p)) {
    throw HttpError(400, std::string(what) + " lies outside the " +
                             std::to_string(d.obs.width()) + "x" + std::to_string(d.obs.height()) +
                             " image");
  }
  return p;
}

}  // namespace

struct AnnotationServer::Impl {
  std::filesystem::path dir;
  std::map<std::string, std::unique_ptr<Entry>> demos;  // fixed after construction
  std::vector<std::string> order;
  httplib::Server server;

  Entry& find(const std::string& id) {
    auto it = demos.find(id);
    if (it == demos.end()) throw HttpError(404, "unknown demo '" + id + "'");
    return *it->second;
  }

  void commit(Entry& e, Demo updated) {
    ReplaceDemo(dir, updated);
    e.demo = std::move(updated);
  }

  Json post_action(Entry& e, const Json& body) {
    std::unique_lock lock(e.mu);
    if (!body.is_object() || !body.contains("pick") || !body.contains("place")) {
      throw HttpError(400, "expected {\"pick\": [u, v], \"place\": [u, v]}");
    }
    Demo updated = e.demo;
    updated.action = PickPlaceAction{ParsePixel(body["pick"], "pick", updated),
                                     ParsePixel(body["place"], "place", updated)};
    std::vector<std::string> violations;
    if (!updated.masks.pick_object.at(updated.action->pick)) {
      violations.push_back("pick_px outside pick_object");
    }
    if (!updated.masks.place_target.at(updated.action->place)) {
      violations.push_back("place_px outside place_target");
    }
    if (!violations.empty()) throw HttpError(409, violations.front(), violations);
    commit(e, std::move(updated));
    return StateJson(e.demo);
  }

  Json post_mask(Entry& e, const Json& body) {
    std::unique_lock lock(e.mu);
    if (!body.is_object() || !body.contains("role") || !body["role"].is_string() ||
        !body.contains("polygon") || !body["polygon"].is_array()) {
      throw HttpError(400, "expected {\"role\": ..., \"polygon\": [[u, v], ...]}");
    }
    const std::string role = body["role"].get<std::string>();
    if (role != "pick" && role != "place" && role != "distractor") {
      throw HttpError(400, "role must be pick, place or distractor");
    }
    const Json& poly = body["polygon"];
    if (poly.size() < 3) throw HttpError(400, "polygon needs at least 3 vertices");
    Demo updated = e.demo;
    std::vector<Pixel> vertices;
    for (const auto& v : poly) vertices.push_back(ParsePixel(v, "vertex", updated));
    Bitmap mask = RasterizePolygon(vertices, updated.obs.width(), updated.obs.height());
    if (!AnySet(mask)) throw HttpError(400, "polygon covers no pixel");

    Bitmap others = MakeBitmap(updated.obs.width(), updated.obs.height());
    if (role != "pick") others = Union(others, updated.masks.pick_object);
    if (role != "place") others = Union(others, updated.masks.place_target);
    for (const auto& d : updated.masks.distractors) others = Union(others, d);
    if (Intersects(mask, others)) {
      throw HttpError(409, "mask overlaps another object mask", Json::array({"masks intersect"}));
    }
    if (role == "distractor") {
      updated.masks.distractors.push_back(std::move(mask));
    } else {
      const bool pick = role == "pick";
      if (updated.action && !mask.at(pick ? updated.action->pick : updated.action->place)) {
        const std::string msg = pick ? "pick_px outside pick_object" : "place_px outside place_target";
        throw HttpError(409, msg, Json::array({msg}));
      }
      (pick ? updated.masks.pick_object : updated.masks.place_target) = std::move(mask);
    }
    commit(e, std::move(updated));
    return StateJson(e.demo);
  }
};

AnnotationServer::AnnotationServer(const std::filesystem::path& dataset_dir)
    : impl_(std::make_unique<Impl>()) {
  impl_->dir = dataset_dir;
  DemoDataset ds = LoadDataset(dataset_dir);
  for (auto& d : ds.demos) {
    impl_->order.push_back(d.id);
    auto e = std::make_unique<Entry>();
    e->demo = std::move(d);
    impl_->demos.emplace(e->demo.id, std::move(e));
  }

  Impl* impl = impl_.get();
  auto wrap = [](auto handler) {
    return [handler](const httplib::Request& req, httplib::Response& res) {
      res.set_header(kApiHeader, kApiVersion);
      try {
        if (req.has_header(kApiHeader) && req.get_header_value(kApiHeader) != kApiVersion) {
          throw HttpError(400, std::string("unsupported API version; this server speaks ") +
                                   kApiVersion);
        }
        handler(req, res);
      } catch (const HttpError& e) {
        res.status = e.status;
        Json j{{"error", e.what()}};
        if (!e.details.is_null()) j["violations"] = e.details;
        res.set_content(j.dump(), "application/json");
      } catch (const Error& e) {
        res.status = 500;
        res.set_content(Json{{"error", e.what()}, {"code", ToString(e.code())}}.dump(),
                        "application/json");
      }
    };
  };

  impl->server.Get("/api/demos", wrap([impl](const httplib::Request&, httplib::Response& res) {
    Json list = Json::array();
    for (const auto& id : impl->order) {
      Entry& e = *impl->demos.at(id);
      std::shared_lock lock(e.mu);
      const Demo& d = e.demo;
      list.push_back({{"id", d.id},
                      {"task_text", d.task_text},
                      {"has_action", d.action.has_value()},
                      {"has_pick_mask", AnySet(d.masks.pick_object)},
                      {"has_place_mask", AnySet(d.masks.place_target)},
                      {"distractors", d.masks.distractors.size()},
                      {"annotated", ValidateDemo(d).empty()}});
    }
    res.set_content(Json{{"demos", list}}.dump(), "application/json");
  }));
  impl->server.Get(R"(/api/demos/([^/]+))",
                   wrap([impl](const httplib::Request& req, httplib::Response& res) {
                     Entry& e = impl->find(req.matches[1]);
                     std::shared_lock lock(e.mu);
                     res.set_content(StateJson(e.demo).dump(), "application/json");
                   }));
  impl->server.Get(R"(/api/demos/([^/]+)/topdown\.png)",
                   wrap([impl](const httplib::Request& req, httplib::Response& res) {
                     Entry& e = impl->find(req.matches[1]);
                     std::shared_lock lock(e.mu);
                     const Bytes png = EncodePngRgb(e.demo.obs.rgb);
                     res.set_content(std::string(png.begin(), png.end()), "image/png");
                   }));
  impl->server.Post(R"(/api/demos/([^/]+)/action)",
                    wrap([impl](const httplib::Request& req, httplib::Response& res) {
                      Entry& e = impl->find(req.matches[1]);
                      res.set_content(impl->post_action(e, Body(req)).dump(), "application/json");
                    }));
  impl->server.Post(R"(/api/demos/([^/]+)/mask)",
                    wrap([impl](const httplib::Request& req, httplib::Response& res) {
                      Entry& e = impl->find(req.matches[1]);
                      res.set_content(impl->post_mask(e, Body(req)).dump(), "application/json");
                    }));
}

AnnotationServer::~AnnotationServer() { Stop(); }

int AnnotationServer::Bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) Fail(ErrorCode::kIoError, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    Fail(ErrorCode::kIoError, "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void AnnotationServer::Serve() { impl_->server.listen_after_bind(); }

void AnnotationServer::Stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace sceneaug
