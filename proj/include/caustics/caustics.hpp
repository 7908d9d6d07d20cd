#pragma once

// Everything except the HTTP service (caustics/service.hpp).

#include "catalog.hpp"
#include "curve.hpp"
#include "envelope.hpp"
#include "error.hpp"
#include "expression.hpp"
#include "optics.hpp"
#include "oracle.hpp"
#include "payload.hpp"
#include "scene.hpp"
#include "svg.hpp"
#include "tracer.hpp"
#include "vec2.hpp"
#include "verify.hpp"
