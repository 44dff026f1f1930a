#pragma once

#include "hotelbell/chsh.hpp"
#include "hotelbell/density.hpp"
#include "hotelbell/derivation.hpp"
#include "hotelbell/domain.hpp"
#include "hotelbell/error.hpp"
#include "hotelbell/hotel.hpp"
#include "hotelbell/io.hpp"
#include "hotelbell/partial_rv.hpp"
#include "hotelbell/simulator.hpp"
