#pragma once

#include "hyperpolygon/betti.hpp"
#include "hyperpolygon/cli.hpp"
#include "hyperpolygon/combinat.hpp"
#include "hyperpolygon/hitchin.hpp"
#include "hyperpolygon/io.hpp"
#include "hyperpolygon/quiver.hpp"
#include "hyperpolygon/spectral.hpp"
