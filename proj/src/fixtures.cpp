#include "mplex/fixtures.hpp"

namespace mplex::fixtures {

LayerPair oscillating_pair()
{
    Matrix w1{{0, 1, 1, 1, 0}, {1, 0, 0, 1, 0}, {1, 0, 0, 0, 0}, {1, 1, 0, 0, 1}, {0, 0, 0, 1, 0}};
    Matrix w2{{0, 0, 0, 0, 1}, {0, 0, 1, 0, 1}, {0, 1, 0, 1, 1}, {0, 0, 1, 0, 0}, {1, 1, 1, 0, 0}};
    return {LayerGraph::from_weights(std::move(w1)), LayerGraph::from_weights(std::move(w2))};
}

Matrix oscillating_product()
{
    return Matrix{{0, 0, 0, 1, 0},
                  {1.0 / 2, 0, 0, 1.0 / 2, 0},
                  {5.0 / 18, 2.0 / 18, 0, 9.0 / 18, 2.0 / 18},
                  {1, 0, 0, 0, 0},
                  {9.0 / 18, 2.0 / 18, 2.0 / 18, 5.0 / 18, 0}};
}

Matrix oscillating_even_limit()
{
    return Matrix{{1, 0, 0, 0, 0},
                  {1.0 / 2, 0, 0, 1.0 / 2, 0},
                  {5.0 / 8, 0, 0, 3.0 / 8, 0},
                  {0, 0, 0, 1, 0},
                  {3.0 / 8, 0, 0, 5.0 / 8, 0}};
}

Matrix oscillating_odd_limit()
{
    return Matrix{{0, 0, 0, 1, 0},
                  {1.0 / 2, 0, 0, 1.0 / 2, 0},
                  {3.0 / 8, 0, 0, 5.0 / 8, 0},
                  {1, 0, 0, 0, 0},
                  {5.0 / 8, 0, 0, 3.0 / 8, 0}};
}

LayerPair degree_mismatch_pair()
{
    Matrix w1{{0, 50, 1, 1, 2, 40},  {50, 0, 3, 1, 50, 50}, {1, 3, 0, 40, 40, 2},
              {1, 1, 40, 0, 40, 3},  {2, 50, 40, 40, 0, 1}, {40, 50, 2, 3, 1, 0}};
    Matrix w2{{0, 1, 3, 1, 1, 1},  {1, 0, 1, 2, 1, 3}, {3, 1, 0, 50, 40, 3},
              {1, 2, 50, 0, 50, 2}, {1, 1, 40, 50, 0, 1}, {1, 3, 3, 2, 1, 0}};
    return {LayerGraph::from_weights(std::move(w1)), LayerGraph::from_weights(std::move(w2))};
}

LayerPair circulant_pair()
{
    return {generate(GeneratorSpec{Circulant{{1, 4}, 0.5}, 5, 0}),
            generate(GeneratorSpec{Circulant{{2, 3}, 0.5}, 5, 0})};
}

LayerPair noninterpolating_pair()
{
    Matrix w1{{0, 0.5, 0.5}, {0.5, 0, 0.5}, {0.5, 0.5, 0}};
    Matrix w2{{0, 2, 1}, {2, 0, 1}, {1, 1, 0}};
    return {LayerGraph::from_weights(std::move(w1)), LayerGraph::from_weights(std::move(w2))};
}

Matrix noninterpolating_product()
{
    return Matrix{{1.0 / 2, 1.0 / 6, 1.0 / 3}, {1.0 / 6, 1.0 / 2, 1.0 / 3}, {1.0 / 4, 1.0 / 4, 1.0 / 2}};
}

Vector noninterpolating_pi_a() { return {1.0 / 3, 1.0 / 3, 1.0 / 3}; }
Vector noninterpolating_pi_b() { return {3.0 / 8, 3.0 / 8, 1.0 / 4}; }
Vector noninterpolating_pi_ba() { return {3.0 / 10, 3.0 / 10, 2.0 / 5}; }

}  // namespace mplex::fixtures
