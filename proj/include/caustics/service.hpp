#pragma once

// HTTP compute service: GET /catalog, POST /compute, GET /health. Request
// handling is a pure function of (method, path, body); the server only
// forwards to it, so concurrent requests share no mutable state.

#include <exception>
#include <string>

#include <httplib.h>
#include <json.hpp>

#include "error.hpp"
#include "payload.hpp"
#include "scene.hpp"
#include "svg.hpp"

namespace caustics
{

struct ServiceResponse
{
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

namespace detail
{

inline ServiceResponse error_response(int status, std::string const& kind, std::string const& message)
{
    return {status, Json{{"error", kind}, {"message", message}}.dump(), "application/json"};
}

} // namespace detail

/*!
 * Answer one request. POST /compute accepts a scene document and returns
 * the geometry payload; with format "svg" it returns the rendered SVG.
 * Invalid scenes and undefined geometry are reported as 400 with a JSON
 * body naming the error.
 */
inline ServiceResponse handle_request(std::string const& method, std::string const& path, std::string const& body,
                                      std::string const& format = "data")
{
    try
    {
        if (path == "/health")
        {
            if (method != "GET")
                return detail::error_response(405, "method", "use GET " + path);
            return {200, Json{{"status", "ok"}}.dump(), "application/json"};
        }
        if (path == "/catalog")
        {
            if (method != "GET")
                return detail::error_response(405, "method", "use GET " + path);
            return {200, catalog_json().dump(), "application/json"};
        }
        if (path == "/compute")
        {
            if (method != "POST")
                return detail::error_response(405, "method", "use POST " + path);
            if (format != "data" && format != "svg")
                return detail::error_response(400, "request", "format must be 'data' or 'svg'");
            Scene const scene = load_scene_text(body);
            Json const payload = compute_payload(scene);
            if (format == "svg")
                return {200, render_svg(payload), "image/svg+xml"};
            return {200, payload.dump(), "application/json"};
        }
        return detail::error_response(404, "not_found", "no route for " + path);
    }
    catch (SceneError const& e)
    {
        return detail::error_response(400, "scene", e.what());
    }
    catch (DegenerateError const& e)
    {
        return detail::error_response(400, "degenerate", e.what());
    }
    catch (DomainError const& e)
    {
        return detail::error_response(400, "domain", e.what());
    }
    catch (Error const& e)
    {
        return detail::error_response(400, "error", e.what());
    }
    catch (std::exception const& e)
    {
        return detail::error_response(500, "internal", e.what());
    }
}

/*!
 * Listen on host:port until the process is stopped. Throws when the port
 * cannot be bound.
 */
inline void serve(int port, std::string const& host = "127.0.0.1")
{
    httplib::Server server;
    auto forward = [](httplib::Request const& req, httplib::Response& res) {
        std::string const format = req.has_param("format") ? req.get_param_value("format") : "data";
        ServiceResponse const out = handle_request(req.method, req.path, req.body, format);
        res.status = out.status;
        res.set_content(out.body, out.content_type);
        res.set_header("Access-Control-Allow-Origin", "*");
    };
    server.Get("/health", forward);
    server.Get("/catalog", forward);
    server.Post("/compute", forward);
    server.Options("/compute", [](httplib::Request const&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Origin", "*");
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
    if (!server.bind_to_port(host, port))
        throw Error("port unavailable: " + std::to_string(port));
    server.listen_after_bind();
}

} // namespace caustics
