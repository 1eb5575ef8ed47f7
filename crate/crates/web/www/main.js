import init, { torus_arrangement, classify, special_check } from "./pkg/cubulate_web.js";

const NS = "http://www.w3.org/2000/svg";

const manifolds = {
  "graph manifold, chargeless": `block A seifert genus=0 boundaries=1 exceptional=(2,1) b=0
block B seifert genus=0 boundaries=2 b=0
block C seifert genus=0 boundaries=1 exceptional=(2,-1) b=0
torus T0 A.0 B.0 glue=1,2,-1,-1
torus T1 B.1 C.0 glue=1,-2,1,-1
`,
  "graph manifold, charged": `block A seifert genus=0 boundaries=1 exceptional=(2,1) b=0
block B seifert genus=0 boundaries=2 b=0
block C seifert genus=0 boundaries=1 exceptional=(2,1) b=0
torus T0 A.0 B.0 glue=1,2,-1,-1
torus T1 B.1 C.0 glue=1,-2,1,-1
`,
  "Sol": `block M hyperbolic boundaries=0
geometry Sol
`,
};

const complexes = {
  "square": `vertex a
vertex b
vertex c
vertex d
cube 2 a b c d
`,
  "Moebius strip": `vertex A
vertex B
vertex p
vertex q
cube 2 A p B q
cube 2 p B q A
`,
};

function el(name, attrs, parent) {
  const e = document.createElementNS(NS, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  parent.appendChild(e);
  return e;
}

function fit(points, size, pad) {
  let lo = Infinity, hi = -Infinity;
  for (const [x, y] of points) {
    lo = Math.min(lo, x, y);
    hi = Math.max(hi, x, y);
  }
  const span = hi - lo || 1;
  return ([x, y]) => [pad + ((x - lo) / span) * (size - 2 * pad), size - pad - ((y - lo) / span) * (size - 2 * pad)];
}

function drawLines(svg, data) {
  svg.replaceChildren();
  const r = data.radius, size = +svg.getAttribute("width");
  const map = fit([[-r, -r], [r, r]], size, 10);
  const colors = ["#c33", "#36c", "#393", "#c90", "#939"];
  const slopes = [...new Set(data.lines.map((l) => `${l.p},${l.q}`))];
  for (const l of data.lines) {
    // x q - y p = c clipped to the box
    const pts = [];
    for (const t of [-r, r]) {
      if (l.p !== 0) pts.push([t, (t * l.q - l.c) / l.p]);
      if (l.q !== 0) pts.push([(l.c + t * l.p) / l.q, t]);
    }
    const inside = pts.filter(([x, y]) => Math.abs(x) <= r + 1e-9 && Math.abs(y) <= r + 1e-9);
    if (inside.length < 2) continue;
    const [a, b] = [map(inside[0]), map(inside[inside.length - 1])];
    el("line", { x1: a[0], y1: a[1], x2: b[0], y2: b[1], stroke: colors[slopes.indexOf(`${l.p},${l.q}`) % colors.length], "stroke-width": 2 }, svg);
  }
}

function drawDual(svg, dual) {
  svg.replaceChildren();
  const map = fit(dual.positions, +svg.getAttribute("width"), 20);
  const p = dual.positions.map(map);
  for (const sq of dual.squares) {
    el("polygon", { points: sq.map((v) => p[v].join(",")).join(" "), fill: "#36c", "fill-opacity": 0.12, stroke: "none" }, svg);
  }
  for (const [u, v] of dual.edges) {
    el("line", { x1: p[u][0], y1: p[u][1], x2: p[v][0], y2: p[v][1], stroke: "#333" }, svg);
  }
  for (const [x, y] of p) el("circle", { cx: x, cy: y, r: 3, fill: "#000" }, svg);
}

function draw() {
  const data = JSON.parse(torus_arrangement(document.getElementById("slopes").value, +document.getElementById("window").value));
  const stats = document.getElementById("stats");
  if (data.error) {
    stats.textContent = data.error;
    stats.className = "bad";
    return;
  }
  const d = data.dual;
  stats.className = "";
  stats.textContent = `${data.lines.length} lines, ${data.chambers} chambers; dual: ${d.positions.length} vertices, ` +
    `${d.edges.length} edges, dimension ${d.dimension}, ${d.maximal_cubes} maximal cubes, ` +
    `${d.hyperplanes} hyperplanes, ${d.interior_vertices} interior vertices`;
  drawLines(document.getElementById("lines"), data);
  drawDual(document.getElementById("dual"), d);
}

function examples(selectId, areaId, table) {
  const select = document.getElementById(selectId), area = document.getElementById(areaId);
  for (const name of Object.keys(table)) select.add(new Option(name, name));
  select.onchange = () => (area.value = table[select.value]);
  area.value = table[select.value];
}

function show(outId, text, ok) {
  const out = document.getElementById(outId);
  out.textContent = text;
  out.className = ok ? "good" : "bad";
}

await init();
examples("manifold-example", "manifold", manifolds);
examples("complex-example", "complex", complexes);
document.getElementById("draw").onclick = draw;
document.getElementById("classify").onclick = () => {
  const r = JSON.parse(classify(document.getElementById("manifold").value));
  if (r.error) return show("manifold-out", r.error, false);
  show("manifold-out", [r.summary, ...r.blocks].join("\n"), r.vcs);
};
document.getElementById("check").onclick = () => {
  const r = JSON.parse(special_check(document.getElementById("complex").value));
  if (r.error) return show("complex-out", r.error, false);
  const lines = [`nonpositively curved: ${r.npc ? "yes" : "no"}`, ...r.link_issues];
  for (const h of r.hyperplanes) {
    const flags = ["one_sided", "self_intersecting", "self_osculating"].filter((k) => h[k]).map((k) => k.replace("_", "-"));
    lines.push(`hyperplane ${h.id} [${h.edges.join(" ")}]${flags.length ? ": " + flags.join(", ") : ""}`);
  }
  for (const [a, b] of r.inter_osculating) lines.push(`hyperplanes ${a} and ${b}: inter-osculating`);
  lines.push(`special: ${r.special ? "yes" : "no"}`);
  show("complex-out", lines.join("\n"), r.special);
};
draw();
