#pragma once

#include <metlie/core.hpp>
#include <metlie/linalg.hpp>
#include <metlie/algebra.hpp>
#include <metlie/metric.hpp>
#include <metlie/spectral.hpp>
#include <metlie/ricci.hpp>
#include <metlie/derivations.hpp>
#include <metlie/classifier.hpp>
#include <metlie/generator.hpp>
