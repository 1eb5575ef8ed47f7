# Klein bottle quotient of the square grid by a glide reflection along the
# diagonal. All edges fall into one hyperplane, which crosses itself.
vertex v0
vertex v1
vertex v2
vertex v3
vertex v4
vertex v5
vertex v6
vertex v7
vertex v8
vertex v9
vertex v10
vertex v11
cube 2 v0 v1 v2 v3
cube 2 v0 v1 v5 v7
cube 2 v0 v2 v10 v8
cube 2 v0 v5 v10 v3
cube 2 v1 v3 v11 v10
cube 2 v1 v7 v11 v9
cube 2 v2 v3 v4 v5
cube 2 v2 v4 v8 v9
cube 2 v4 v5 v6 v7
cube 2 v4 v6 v9 v11
cube 2 v6 v7 v8 v9
cube 2 v6 v8 v11 v10
