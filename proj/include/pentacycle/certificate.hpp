/*
   Copyright 2026 The pentacycle authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef PENTACYCLE_CERTIFICATE_HPP
#define PENTACYCLE_CERTIFICATE_HPP

#include <string>
#include <vector>

#include "pentacycle/fixtures.hpp"

namespace pentacycle {

enum class Status { Verified, Failed, FixtureTrusted };

inline const char* status_name(Status s)
{
    switch (s) {
        case Status::Verified: return "verified";
        case Status::Failed: return "failed";
        case Status::FixtureTrusted: return "fixture-trusted";
    }
    return "failed";
}

struct Certificate {
    std::string name;
    std::string anchor;  // what the node establishes, in words
    Status status = Status::Verified;
    Json payload = Json::object();
    std::vector<Certificate> children;

    static Certificate leaf(std::string name, std::string anchor, bool ok, Json payload = Json::object())
    {
        return {std::move(name), std::move(anchor), ok ? Status::Verified : Status::Failed, std::move(payload), {}};
    }
    static Certificate trusted(std::string name, std::string anchor, Json payload = Json::object())
    {
        return {std::move(name), std::move(anchor), Status::FixtureTrusted, std::move(payload), {}};
    }

    Certificate& add(Certificate c)
    {
        children.push_back(std::move(c));
        return children.back();
    }

    /// Internal nodes are verified iff no descendant failed.
    Status rollup()
    {
        if (children.empty()) return status;
        bool failed = status == Status::Failed;
        for (auto& c : children)
            if (c.rollup() == Status::Failed) failed = true;
        status = failed ? Status::Failed : Status::Verified;
        return status;
    }

    bool any_failed() const
    {
        if (status == Status::Failed) return true;
        for (auto& c : children)
            if (c.any_failed()) return true;
        return false;
    }

    const Certificate* find(const std::string& n) const
    {
        if (name == n) return this;
        for (auto& c : children)
            if (auto* r = c.find(n)) return r;
        return nullptr;
    }

    Json to_json() const
    {
        Json j;
        j["name"] = name;
        j["anchor"] = anchor;
        j["status"] = status_name(status);
        j["payload"] = payload;
        Json ch = Json::array();
        for (auto& c : children) ch.push_back(c.to_json());
        j["children"] = ch;
        return j;
    }

    std::string dump() const { return to_json().dump(2) + "\n"; }

    /// Indented one-line-per-node summary.
    void render_text(std::string& out, int depth = 0) const
    {
        out += std::string(static_cast<std::size_t>(2 * depth), ' ');
        out += "[" + std::string(status_name(status)) + "] " + name + ": " + anchor + "\n";
        for (auto& c : children) c.render_text(out, depth + 1);
    }
};

/// Run `body`, turning exceptions into a failed leaf.
template <class F>
Certificate guarded(const std::string& name, const std::string& anchor, F&& body)
{
    try {
        return body();
    } catch (const std::exception& e) {
        Json p;
        p["error"] = e.what();
        return Certificate::leaf(name, anchor, false, p);
    }
}

}  // namespace pentacycle

#endif  // PENTACYCLE_CERTIFICATE_HPP
