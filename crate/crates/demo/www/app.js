import init, { pl_convolve, fixed_point, cyclic_convolve } from "./pkg/infconv_demo.js";

const COLORS = ["#1f77b4", "#ff7f0e", "#2ca02c", "#999"];

// Samples a curve given by breakpoints with tail slopes -1 and +1.
function evalCurve(points, x) {
  const n = points.length;
  if (x <= points[0][0]) return points[0][1] + (points[0][0] - x);
  if (x >= points[n - 1][0]) return points[n - 1][1] + (x - points[n - 1][0]);
  for (let i = 1; i < n; i++) {
    if (x <= points[i][0]) {
      const [x0, v0] = points[i - 1], [x1, v1] = points[i];
      return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
    }
  }
}

function plotCurves(canvas, curves) {
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const xs = curves.flatMap(c => c.points.map(p => p[0]));
  const lo = Math.min(...xs) - 3, hi = Math.max(...xs) + 3;
  const samples = curves.map(c => {
    const out = [];
    for (let i = 0; i <= 200; i++) {
      const x = lo + (hi - lo) * i / 200;
      out.push([x, evalCurve(c.points, x)]);
    }
    return out;
  });
  const ys = samples.flat().map(p => p[1]);
  const ymin = Math.min(0, ...ys), ymax = Math.max(...ys);
  const sx = x => (x - lo) / (hi - lo) * canvas.width;
  const sy = y => canvas.height - 10 - (y - ymin) / (ymax - ymin || 1) * (canvas.height - 20);
  ctx.strokeStyle = "#eee";
  ctx.beginPath(); ctx.moveTo(sx(0), 0); ctx.lineTo(sx(0), canvas.height); ctx.stroke();
  samples.forEach((pts, k) => {
    ctx.strokeStyle = curves[k].color;
    ctx.lineWidth = curves[k].width || 2;
    ctx.beginPath();
    pts.forEach(([x, y], i) => (i ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
    ctx.stroke();
  });
}

function show(id, result) {
  const el = document.getElementById(id);
  el.className = result.error ? "err" : "";
  el.textContent = result.error ? result.error : JSON.stringify(result, null, 1);
  return !result.error;
}

const val = id => document.getElementById(id).value;

function runPl() {
  const r = JSON.parse(pl_convolve(val("pl-f"), val("pl-g")));
  if (!show("pl-out", r.error ? r : { f: r.f.breakpoints, g: r.g.breakpoints, conv: r.conv.breakpoints })) return;
  plotCurves(document.getElementById("pl-canvas"), [
    { points: r.f.points, color: COLORS[0] },
    { points: r.g.points, color: COLORS[1] },
    { points: r.conv.points, color: COLORS[2], width: 3 },
  ]);
}

function runFp() {
  const r = JSON.parse(fixed_point(val("fp-lambda"), val("fp-g"), val("fp-tol")));
  if (!show("fp-out", r.error ? r : {
    converged: r.converged, iterations: r.iterations, residual: r.residual,
    solution: r.solution.breakpoints, steps: r.steps.slice(0, 6),
  })) return;
  const curves = r.iterates.map(c => ({ points: c.points, color: COLORS[3], width: 1 }));
  curves.push({ points: r.solution.points, color: COLORS[2], width: 3 });
  plotCurves(document.getElementById("fp-canvas"), curves);
}

function runCy() {
  const r = JSON.parse(cyclic_convolve(val("cy-u"), val("cy-v"), val("cy-mode")));
  if (!show("cy-out", r.error ? r : { result: r.result, in_linf_dis: r.in_linf_dis })) return;
  const canvas = document.getElementById("cy-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const ymax = Math.max(...r.plot, 1);
  const w = canvas.width / r.plot.length;
  r.plot.forEach((y, i) => {
    const h = y / ymax * (canvas.height - 20);
    ctx.fillStyle = COLORS[2];
    ctx.fillRect(i * w + 4, canvas.height - h, w - 8, h);
    ctx.fillStyle = "#222";
    ctx.fillText(r.result[i], i * w + 6, canvas.height - h - 4);
  });
}

await init();
document.getElementById("pl-run").onclick = runPl;
document.getElementById("fp-run").onclick = runFp;
document.getElementById("cy-run").onclick = runCy;
runPl(); runFp(); runCy();
