import init, { mixing, convergence, sandwich } from "./pkg/qwalk_demo.js";

const $ = (id) => document.getElementById(id);
let current = null;

function color(x) {
  // white at 0, dark blue at 1
  const t = Math.max(0, Math.min(1, x));
  const r = Math.round(255 * (1 - t));
  const g = Math.round(255 * (1 - 0.7 * t));
  return `rgb(${r},${g},255)`;
}

function drawHeatmap(data) {
  const c = $("heatmap");
  const ctx = c.getContext("2d");
  const n = data.n;
  const s = c.width / n;
  ctx.clearRect(0, 0, c.width, c.height);
  for (let i = 0; i < n; i++) {
    for (let j = 0; j < n; j++) {
      ctx.fillStyle = color(data.matrix[i][j]);
      ctx.fillRect(j * s, i * s, s, s);
    }
  }
  ctx.strokeStyle = "#c00";
  ctx.lineWidth = 2;
  for (const v of data.marked) {
    ctx.strokeRect(v * s + 1, v * s + 1, s - 2, s - 2);
  }
  current = data;
}

function drawTrace(data) {
  const c = $("trace");
  const ctx = c.getContext("2d");
  const pad = 40;
  ctx.clearRect(0, 0, c.width, c.height);
  const pts = data.points.filter((p) => p[1] > 0);
  if (pts.length === 0) return;
  const lx = (t) => Math.log10(t);
  const ys = pts.map((p) => Math.log10(p[1]));
  const x0 = lx(pts[0][0]), x1 = lx(data.horizon);
  const y0 = Math.min(...ys), y1 = Math.max(...ys);
  const px = (x) => pad + ((x - x0) / Math.max(x1 - x0, 1e-9)) * (c.width - 2 * pad);
  const py = (y) => c.height - pad - ((y - y0) / Math.max(y1 - y0, 1e-9)) * (c.height - 2 * pad);
  ctx.strokeStyle = "#888";
  ctx.strokeRect(pad, pad, c.width - 2 * pad, c.height - 2 * pad);
  ctx.fillStyle = "#333";
  ctx.fillText(`max error ${pts[pts.length - 1][1].toExponential(2)} at t = ${data.horizon}`, pad, pad - 8);
  ctx.fillText("log t", c.width - pad - 20, c.height - 12);
  ctx.fillText(y1.toFixed(1), 4, pad + 4);
  ctx.fillText(y0.toFixed(1), 4, c.height - pad);
  ctx.beginPath();
  ctx.strokeStyle = "#1f5fbf";
  pts.forEach((p, i) => {
    const x = px(lx(p[0])), y = py(Math.log10(p[1]));
    if (i === 0) ctx.moveTo(x, y); else ctx.lineTo(x, y);
  });
  ctx.stroke();
}

function drawSandwich(data) {
  const c = $("sandwich");
  const ctx = c.getContext("2d");
  ctx.clearRect(0, 0, c.width, c.height);
  const m = data.labels.length;
  const entries = [];
  for (let i = 0; i < m; i++) {
    for (let j = 0; j < m; j++) {
      entries.push({ lab: `${data.labels[i]},${data.labels[j]}`, lo: data.lower[i][j], x: data.value[i][j], hi: data.upper[i][j] });
    }
  }
  const top = Math.max(...entries.map((e) => e.hi), 1e-9);
  const w = Math.min(60, (c.width - 20) / entries.length);
  const base = c.height - 30;
  const h = (v) => (v / top) * (base - 10);
  entries.forEach((e, k) => {
    const x = 10 + k * w + w / 2;
    ctx.strokeStyle = "#999";
    ctx.beginPath();
    ctx.moveTo(x, base - h(e.lo));
    ctx.lineTo(x, base - h(e.hi));
    ctx.stroke();
    for (const [v, col] of [[e.lo, "#2a8"], [e.hi, "#c33"]]) {
      ctx.fillStyle = col;
      ctx.fillRect(x - 8, base - h(v) - 1, 16, 2);
    }
    ctx.fillStyle = "#1f5fbf";
    ctx.beginPath();
    ctx.arc(x, base - h(e.x), 3, 0, 2 * Math.PI);
    ctx.fill();
    ctx.fillStyle = "#333";
    ctx.fillText(e.lab, x - 10, base + 14);
  });
  $("tight").textContent = `lower bound tight: ${data.lower_tight}, upper bound tight: ${data.upper_tight} (green lower, red upper, dot value)`;
}

function run() {
  $("error").textContent = "";
  const preset = $("preset").value;
  const marked = $("marked").value;
  const horizon = Math.max(10, parseInt($("horizon").value, 10) || 1000);
  try {
    drawHeatmap(JSON.parse(mixing(preset, marked)));
    drawTrace(JSON.parse(convergence(preset, marked, horizon, 60)));
    drawSandwich(JSON.parse(sandwich(preset, marked)));
  } catch (err) {
    $("error").textContent = String(err.message ?? err);
  }
}

$("heatmap").addEventListener("mousemove", (ev) => {
  if (!current) return;
  const c = $("heatmap");
  const s = c.width / current.n;
  const j = Math.floor(ev.offsetX / s), i = Math.floor(ev.offsetY / s);
  if (i >= 0 && j >= 0 && i < current.n && j < current.n) {
    $("cell").textContent = `M[${i},${j}] = ${current.matrix[i][j].toFixed(6)}`;
  }
});

await init();
$("run").addEventListener("click", run);
run();
