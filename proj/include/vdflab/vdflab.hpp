#pragma once

#include "core.hpp"
#include "graph.hpp"
#include "wgraph.hpp"
#include "iso.hpp"
#include "property.hpp"
#include "io.hpp"
#include "distance.hpp"
#include "random.hpp"
#include "regularity.hpp"
#include "structure.hpp"
#include "tester.hpp"
#include "blowup.hpp"
#include "gallery.hpp"
#include "harness.hpp"
