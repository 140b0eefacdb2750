//! Read-only HTTP service over one report.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{Html, IntoResponse, Response};
use axum::routing::get;
use axum::{Json, Router};
use hypolab_core::{Alpha, Report};
use serde_json::json;
use tower_http::services::ServeDir;

const PLACEHOLDER: &str = "<!doctype html>\n<title>hypolab</title>\n\
<p>No UI bundle configured (start with <code>--ui-dir</code>).</p>\n\
<p>Report: <a href=\"/api/report\">/api/report</a></p>\n";

pub fn router(report: Arc<Report>, ui_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/report", get(get_report))
        .route("/api/infer", get(get_infer))
        .with_state(report);
    match ui_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.route("/", get(|| async { Html(PLACEHOLDER) })),
    }
}

async fn get_report(State(report): State<Arc<Report>>) -> Json<Report> {
    Json((*report).clone())
}

fn bad_request(message: String) -> Response {
    (StatusCode::BAD_REQUEST, Json(json!({ "error": message }))).into_response()
}

async fn get_infer(
    State(report): State<Arc<Report>>,
    Query(params): Query<HashMap<String, String>>,
) -> Response {
    let Some(raw) = params.get("alpha") else {
        return bad_request("missing query parameter `alpha`".into());
    };
    let alpha = match raw.trim().parse::<f64>() {
        Ok(value) => match Alpha::new(value) {
            Ok(alpha) => alpha,
            Err(err) => return bad_request(err.to_string()),
        },
        Err(_) => return bad_request(format!("alpha `{raw}` is not a number")),
    };
    match report.reinfer(alpha) {
        Ok(updated) => Json(updated).into_response(),
        Err(err) => (
            StatusCode::INTERNAL_SERVER_ERROR,
            Json(json!({ "error": err.to_string() })),
        )
            .into_response(),
    }
}

pub async fn serve(report: Report, port: u16, ui_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("serving on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(report), ui_dir)).await
}
