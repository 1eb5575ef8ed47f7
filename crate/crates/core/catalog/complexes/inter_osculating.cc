# Three squares around the corner d with the fourth quadrant missing.
# The hyperplanes through b-d and c-d cross in the square a b c d and
# osculate at d.
vertex a
vertex b
vertex c
vertex d
vertex e
vertex f
vertex h
cube 2 a b c d
cube 2 b e d f
cube 2 c d f h
