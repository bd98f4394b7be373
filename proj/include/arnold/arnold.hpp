#pragma once

// Everything except the JSON/CSV layer (arnold/io.hpp), which pulls in the
// vendored JSON library.

#include "arnold/bessel.hpp"
#include "arnold/errors.hpp"
#include "arnold/flow.hpp"
#include "arnold/forcing.hpp"
#include "arnold/integrator.hpp"
#include "arnold/moebius.hpp"
#include "arnold/pool.hpp"
#include "arnold/quadrature.hpp"
#include "arnold/roots.hpp"
#include "arnold/rotation.hpp"
#include "arnold/scan.hpp"
#include "arnold/svg.hpp"
#include "arnold/tongue.hpp"
#include "arnold/verify.hpp"
